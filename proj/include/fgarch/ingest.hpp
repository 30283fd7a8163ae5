#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fgarch/types.hpp"

namespace fgarch {

/// One trading day of intraday prices at uniform clock intervals. The first
/// entry (slot 0) is the opening reference price used only as the lag for
/// the first return, so P+1 prices yield P returns.
struct PriceDay {
    std::string day_id;
    std::vector<double> prices;
};

struct FilterDaysResult {
    std::vector<PriceDay> kept;
    std::vector<std::pair<std::string, std::string>> dropped;  // (day_id, reason)
};

/// Drops days whose price count differs from `expected_length`; order preserved.
FilterDaysResult filter_days(const std::vector<PriceDay>& days, int expected_length);

struct LogReturnResult {
    std::vector<Curve> curves;
    std::vector<std::string> day_ids;
    std::vector<std::pair<std::string, std::string>> rejected;  // (day_id, reason)
};

/// Converts each day of P+1 prices to the curve of P log-differences
/// y(t_j) = log p(slot j) - log p(slot j-1) on the grid j/P. P is taken from
/// the first day; days of other lengths are rejected and reported. A
/// nonpositive price is a data error naming the day.
LogReturnResult prices_to_log_returns(const std::vector<PriceDay>& days);

/// Wide curves CSV: header `day,t_1,...,t_T`, one row per curve, values at
/// 17 significant digits (lossless round trip).
void write_curves_csv(const std::vector<Curve>& sample, const std::string& path,
                      const std::vector<std::string>& labels = {});
std::vector<Curve> read_curves_csv(const std::string& path);

/// Long prices CSV: header `day,slot,price`, slot 0..P. Days with missing or
/// duplicate slots are dropped with a reason (gaps are not imputed).
struct PricesFile {
    std::vector<PriceDay> days;
    std::vector<std::pair<std::string, std::string>> dropped;
};
PricesFile read_prices_csv(const std::string& path);
void write_prices_csv(const std::vector<PriceDay>& days, const std::string& path);

/// Wide kernel CSV: first row `t\s,s_1,...`, then one row per t with values.
void write_kernel_csv(const Kernel2D& K, const std::string& path);

}  // namespace fgarch
