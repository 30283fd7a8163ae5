#include "fgarch/ingest.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "fgarch/errors.hpp"

namespace fgarch {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            cells.push_back(line.substr(start));
            break;
        }
        cells.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return cells;
}

double parse_double(const std::string& cell, long row, long col) {
    double value = 0.0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    const auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc() || res.ptr != end || !std::isfinite(value)) {
        std::ostringstream oss;
        oss << "non-numeric cell '" << cell << "' at row " << row << ", column " << col;
        throw ParseError(oss.str());
    }
    return value;
}

long parse_long(const std::string& cell, long row, long col) {
    long value = 0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    const auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc() || res.ptr != end) {
        std::ostringstream oss;
        oss << "non-integer cell '" << cell << "' at row " << row << ", column " << col;
        throw ParseError(oss.str());
    }
    return value;
}

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ofstream open_for_write(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open for writing: " + path);
    return out;
}

std::ifstream open_for_read(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open for reading: " + path);
    return in;
}

}  // namespace

FilterDaysResult filter_days(const std::vector<PriceDay>& days, int expected_length) {
    FilterDaysResult out;
    for (const PriceDay& day : days) {
        if (static_cast<int>(day.prices.size()) == expected_length) {
            out.kept.push_back(day);
        } else {
            std::ostringstream oss;
            oss << "length " << day.prices.size() << " != expected " << expected_length;
            out.dropped.emplace_back(day.day_id, oss.str());
        }
    }
    return out;
}

LogReturnResult prices_to_log_returns(const std::vector<PriceDay>& days) {
    LogReturnResult out;
    if (days.empty()) return out;
    const std::size_t slots = days.front().prices.size();
    if (slots < 2) throw DataError("prices_to_log_returns: days need at least 2 prices");
    const int P = static_cast<int>(slots) - 1;
    const Grid grid{P};

    for (const PriceDay& day : days) {
        if (day.prices.size() != slots) {
            std::ostringstream oss;
            oss << "length " << day.prices.size() << " != " << slots;
            out.rejected.emplace_back(day.day_id, oss.str());
            continue;
        }
        for (double p : day.prices)
            if (!(p > 0.0) || !std::isfinite(p))
                throw DataError("prices_to_log_returns: nonpositive price in day " + day.day_id);
        Eigen::VectorXd v(P);
        for (int j = 0; j < P; ++j)
            v[j] = std::log(day.prices[j + 1]) - std::log(day.prices[j]);
        out.curves.emplace_back(grid, std::move(v));
        out.day_ids.push_back(day.day_id);
    }
    return out;
}

void write_curves_csv(const std::vector<Curve>& sample, const std::string& path,
                      const std::vector<std::string>& labels) {
    if (!labels.empty() && labels.size() != sample.size())
        throw ArgumentError("write_curves_csv: label count != curve count");
    std::ofstream out = open_for_write(path);
    const int T = sample.empty() ? 0 : sample.front().grid.T;
    out << "day";
    for (int j = 1; j <= T; ++j) out << ",t_" << j;
    out << "\n";
    for (std::size_t i = 0; i < sample.size(); ++i) {
        if (sample[i].grid.T != T)
            throw DimensionError("write_curves_csv: curves on different grids");
        out << (labels.empty() ? std::to_string(i) : labels[i]);
        for (int j = 0; j < T; ++j) out << ',' << format_g17(sample[i].values[j]);
        out << "\n";
    }
}

std::vector<Curve> read_curves_csv(const std::string& path) {
    std::ifstream in = open_for_read(path);
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty curves file: " + path);
    const std::vector<std::string> header = split_line(line);
    if (header.empty() || header[0] != "day")
        throw ParseError("curves file must start with a 'day' header column: " + path);
    const int T = static_cast<int>(header.size()) - 1;
    const Grid grid{T};

    std::vector<Curve> curves;
    long row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        const std::vector<std::string> cells = split_line(line);
        if (static_cast<int>(cells.size()) != T + 1) {
            std::ostringstream oss;
            oss << "ragged row " << row << ": " << cells.size() << " cells, expected " << (T + 1);
            throw ParseError(oss.str());
        }
        Eigen::VectorXd v(T);
        for (int j = 0; j < T; ++j) v[j] = parse_double(cells[j + 1], row, j + 2);
        curves.emplace_back(grid, std::move(v));
    }
    return curves;
}

PricesFile read_prices_csv(const std::string& path) {
    std::ifstream in = open_for_read(path);
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty prices file: " + path);
    const std::vector<std::string> header = split_line(line);
    if (header.size() != 3 || header[0] != "day" || header[1] != "slot" || header[2] != "price")
        throw ParseError("prices file must have header day,slot,price: " + path);

    // slot -> price per day, first-appearance day order preserved
    std::vector<std::string> order;
    std::map<std::string, std::map<long, double>> by_day;
    long row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        const std::vector<std::string> cells = split_line(line);
        if (cells.size() != 3) {
            std::ostringstream oss;
            oss << "ragged row " << row << ": " << cells.size() << " cells, expected 3";
            throw ParseError(oss.str());
        }
        const std::string& id = cells[0];
        const long slot = parse_long(cells[1], row, 2);
        const double price = parse_double(cells[2], row, 3);
        if (by_day.find(id) == by_day.end()) order.push_back(id);
        auto& slots = by_day[id];
        if (slots.count(slot)) {
            std::ostringstream oss;
            oss << "duplicate slot " << slot << " for day " << id << " at row " << row;
            throw ParseError(oss.str());
        }
        slots[slot] = price;
    }

    PricesFile out;
    for (const std::string& id : order) {
        const auto& slots = by_day[id];
        const long maxslot = slots.rbegin()->first;
        if (slots.begin()->first != 0 ||
            static_cast<long>(slots.size()) != maxslot + 1) {
            out.dropped.emplace_back(id, "missing slots (gaps are not imputed)");
            continue;
        }
        PriceDay day;
        day.day_id = id;
        day.prices.reserve(slots.size());
        for (const auto& [slot, price] : slots) day.prices.push_back(price);
        out.days.push_back(std::move(day));
    }
    return out;
}

void write_prices_csv(const std::vector<PriceDay>& days, const std::string& path) {
    std::ofstream out = open_for_write(path);
    out << "day,slot,price\n";
    for (const PriceDay& day : days)
        for (std::size_t s = 0; s < day.prices.size(); ++s)
            out << day.day_id << ',' << s << ',' << format_g17(day.prices[s]) << "\n";
}

void write_kernel_csv(const Kernel2D& K, const std::string& path) {
    std::ofstream out = open_for_write(path);
    const int T = K.grid.T;
    out << "t\\s";
    for (int k = 0; k < T; ++k) out << ',' << format_g17(K.grid.point(k));
    out << "\n";
    for (int j = 0; j < T; ++j) {
        out << format_g17(K.grid.point(j));
        for (int k = 0; k < T; ++k) out << ',' << format_g17(K.values(j, k));
        out << "\n";
    }
}

}  // namespace fgarch
