#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "depmine/errors.hpp"
#include "depmine/frequency.hpp"

namespace depmine {

/// Fixed-width bitmap over row indices. The miner's hot loop is intersection
/// counting, so the operations that matter are and_count and assign_and.
class RowSet {
public:
    RowSet() = default;
    explicit RowSet(count_t n, bool all_ones = false)
        : words_((static_cast<std::size_t>(n) + 63) / 64, 0), n_(n) {
        if (all_ones && n > 0) {
            for (auto& w : words_) w = ~std::uint64_t{0};
            const unsigned tail = static_cast<unsigned>(n % 64);
            if (tail != 0) words_.back() = (std::uint64_t{1} << tail) - 1;
        }
    }

    count_t universe() const { return n_; }

    void set(count_t i) { words_[static_cast<std::size_t>(i) >> 6] |= std::uint64_t{1} << (i & 63); }

    bool test(count_t i) const {
        return (words_[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1;
    }

    count_t count() const {
        count_t c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }

    /// this = a & b (all three must share a universe).
    void assign_and(const RowSet& a, const RowSet& b) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] = a.words_[i] & b.words_[i];
    }

    static count_t and_count(const RowSet& a, const RowSet& b) {
        count_t c = 0;
        for (std::size_t i = 0; i < a.words_.size(); ++i)
            c += std::popcount(a.words_[i] & b.words_[i]);
        return c;
    }

    /// Sorted row indices; the list form of the membership set.
    std::vector<count_t> indices() const {
        std::vector<count_t> out;
        out.reserve(static_cast<std::size_t>(count()));
        for (count_t i = 0; i < n_; ++i)
            if (test(i)) out.push_back(i);
        return out;
    }

private:
    std::vector<std::uint64_t> words_;
    count_t n_ = 0;
};

/// Immutable binary transaction data: a row count plus one row-membership set
/// per attribute. Attributes whose support is 0 or n are kept (and reported)
/// but cannot take part in any non-trivial rule.
class Dataset {
public:
    Dataset() = default;

    /// Build from explicit per-attribute row index lists. Indices are
    /// deduplicated; out-of-range indices or duplicate names are rejected.
    static Dataset from_columns(count_t n, std::vector<std::string> names,
                                const std::vector<std::vector<count_t>>& rows_per_attribute) {
        if (names.size() != rows_per_attribute.size())
            throw std::invalid_argument("names/rows size mismatch");
        Dataset ds;
        ds.n_ = n;
        ds.names_ = std::move(names);
        ds.row_sets_.reserve(ds.names_.size());
        for (std::size_t a = 0; a < ds.names_.size(); ++a) {
            if (!ds.name_index_.emplace(ds.names_[a], static_cast<std::uint32_t>(a)).second)
                throw std::invalid_argument("duplicate attribute name '" + ds.names_[a] + "'");
            RowSet rs(n);
            for (count_t r : rows_per_attribute[a]) {
                if (r < 0 || r >= n)
                    throw std::invalid_argument("row index " + std::to_string(r) +
                                                " out of range for n=" + std::to_string(n));
                rs.set(r);
            }
            ds.supports_.push_back(rs.count());
            ds.row_sets_.push_back(std::move(rs));
        }
        return ds;
    }

    count_t row_count() const { return n_; }
    std::uint32_t attribute_count() const { return static_cast<std::uint32_t>(names_.size()); }
    const std::vector<std::string>& attribute_names() const { return names_; }

    const std::string& name(std::uint32_t attr) const {
        require_attribute(attr);
        return names_[attr];
    }

    std::optional<std::uint32_t> index_of(std::string_view name) const {
        auto it = name_index_.find(std::string(name));
        if (it == name_index_.end()) return std::nullopt;
        return it->second;
    }

    std::uint32_t require_index(std::string_view name) const {
        if (auto i = index_of(name)) return *i;
        throw lookup_error("unknown attribute '" + std::string(name) + "'");
    }

    count_t support(std::uint32_t attr) const {
        require_attribute(attr);
        return supports_[attr];
    }

    const RowSet& row_set(std::uint32_t attr) const {
        require_attribute(attr);
        return row_sets_[attr];
    }

    /// Sorted row indices where the attribute is 1.
    std::vector<count_t> rows(std::uint32_t attr) const { return row_set(attr).indices(); }

    /// An attribute can appear in rules only when it holds on some but not all rows.
    bool mineable(std::uint32_t attr) const {
        require_attribute(attr);
        return supports_[attr] > 0 && supports_[attr] < n_;
    }

    std::vector<std::uint32_t> mineable_attributes() const {
        std::vector<std::uint32_t> out;
        for (std::uint32_t a = 0; a < attribute_count(); ++a)
            if (mineable(a)) out.push_back(a);
        return out;
    }

    std::vector<std::uint32_t> excluded_attributes() const {
        std::vector<std::uint32_t> out;
        for (std::uint32_t a = 0; a < attribute_count(); ++a)
            if (!mineable(a)) out.push_back(a);
        return out;
    }

private:
    void require_attribute(std::uint32_t attr) const {
        if (attr >= names_.size())
            throw lookup_error("attribute id " + std::to_string(attr) + " out of range");
    }

    count_t n_ = 0;
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::uint32_t> name_index_;
    std::vector<RowSet> row_sets_;
    std::vector<count_t> supports_;
};

/// FIMI transaction format: one transaction per line, whitespace-separated
/// non-negative integer item ids. Empty lines are empty transactions and still
/// count as rows. Attribute order is ascending item id.
inline Dataset load_fimi(std::istream& in) {
    std::vector<std::vector<count_t>> rows_by_item;  // indexed via item map
    std::unordered_map<long long, std::size_t> item_slot;
    std::vector<long long> items;
    std::string line;
    count_t row = 0;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) {
            long long id = 0;
            std::size_t pos = 0;
            try {
                id = std::stoll(tok, &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos != tok.size() || id < 0)
                throw parse_error("line " + std::to_string(row + 1) +
                                  ": expected non-negative integer item id, got '" + tok + "'");
            auto [it, inserted] = item_slot.emplace(id, items.size());
            if (inserted) {
                items.push_back(id);
                rows_by_item.emplace_back();
            }
            auto& rs = rows_by_item[it->second];
            if (rs.empty() || rs.back() != row) rs.push_back(row);  // dedupe within a line
        }
        ++row;
    }
    // canonical attribute order: ascending item id
    std::vector<std::size_t> order(items.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return items[a] < items[b]; });
    std::vector<std::string> names;
    std::vector<std::vector<count_t>> columns;
    names.reserve(order.size());
    columns.reserve(order.size());
    for (std::size_t slot : order) {
        names.push_back(std::to_string(items[slot]));
        columns.push_back(std::move(rows_by_item[slot]));
    }
    return Dataset::from_columns(row, std::move(names), columns);
}

namespace detail {

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            cells.push_back(trim(std::string_view(line).substr(start)));
            break;
        }
        cells.push_back(trim(std::string_view(line).substr(start, comma - start)));
        start = comma + 1;
    }
    return cells;
}

}  // namespace detail

/// Binary-matrix CSV: a header row of attribute names, then one row per
/// transaction with cells in {0,1}. Attribute order is column order.
inline Dataset load_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw parse_error("csv: missing header row");
    const std::vector<std::string> header = detail::split_csv_line(line);
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i].empty()) throw parse_error("csv: empty attribute name in header");
        for (std::size_t j = i + 1; j < header.size(); ++j)
            if (header[i] == header[j])
                throw parse_error("csv: duplicate attribute name '" + header[i] + "'");
    }

    std::vector<std::vector<count_t>> columns(header.size());
    count_t row = 0;
    while (std::getline(in, line)) {
        const std::vector<std::string> cells = detail::split_csv_line(line);
        if (cells.size() != header.size())
            throw parse_error("csv: parse error row " + std::to_string(row + 1) + ": expected " +
                              std::to_string(header.size()) + " cells, got " +
                              std::to_string(cells.size()));
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (cells[c] == "0") continue;
            if (cells[c] == "1") {
                columns[c].push_back(row);
                continue;
            }
            throw parse_error("csv: parse error cell (" + std::to_string(row + 1) + ", " +
                              header[c] + "): expected 0 or 1, got '" + cells[c] + "'");
        }
        ++row;
    }
    return Dataset::from_columns(row, header, columns);
}

enum class DataFormat { auto_detect, fimi, csv };

inline Dataset load_data(const std::string& path, DataFormat format = DataFormat::auto_detect) {
    DataFormat fmt = format;
    if (fmt == DataFormat::auto_detect) {
        if (path.ends_with(".dat")) fmt = DataFormat::fimi;
        else if (path.ends_with(".csv")) fmt = DataFormat::csv;
        else
            throw config_error("cannot detect data format of '" + path +
                               "' (expected .dat or .csv); use an explicit format override");
    }
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open '" + path + "'");
    try {
        return fmt == DataFormat::fimi ? load_fimi(in) : load_csv(in);
    } catch (const parse_error& e) {
        throw parse_error(path + ": " + e.what());
    }
}

/// Exact counts for a rule's contingency situation. Negated consequents are
/// derived by subtraction; complements are never materialized.
inline FrequencyQuad count_quad(const Dataset& ds, std::span<const std::uint32_t> antecedent,
                                Literal consequent) {
    if (antecedent.empty()) throw std::invalid_argument("antecedent must be non-empty");
    for (std::uint32_t a : antecedent)
        if (a == consequent.attribute)
            throw std::invalid_argument("consequent attribute '" + ds.name(a) +
                                        "' occurs in the antecedent");
    RowSet acc = ds.row_set(antecedent.front());
    RowSet tmp(ds.row_count());
    for (std::size_t i = 1; i < antecedent.size(); ++i) {
        tmp.assign_and(acc, ds.row_set(antecedent[i]));
        std::swap(acc, tmp);
    }
    const count_t n_x = acc.count();
    const count_t joint_pos = RowSet::and_count(acc, ds.row_set(consequent.attribute));
    const count_t sup = ds.support(consequent.attribute);
    if (consequent.value == 1) return FrequencyQuad{n_x, joint_pos, sup, ds.row_count()};
    return FrequencyQuad{n_x, n_x - joint_pos, ds.row_count() - sup, ds.row_count()};
}

}  // namespace depmine
