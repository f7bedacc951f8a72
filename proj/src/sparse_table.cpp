#include "riskfold/sparse_table.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include "riskfold/errors.hpp"

namespace riskfold {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

std::optional<long long> parse_ll(const std::string& s) {
    long long value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return value;
}

}  // namespace

MarginalTable::MarginalTable(std::vector<int> subset, std::vector<std::int64_t> radix_cards)
    : subset_(std::move(subset)), radix_(std::move(radix_cards)) {
    std::int64_t space = 1;
    for (std::int64_t card : radix_) {
        if (card < 1) throw DomainError("marginal: cardinality < 1");
        if (space > std::numeric_limits<std::int64_t>::max() / card)
            throw DomainError("marginal: index space of subset overflows 64 bits");
        space *= card;
    }
}

void MarginalTable::add(std::uint64_t key, std::int64_t count) {
    auto [it, inserted] = index_.try_emplace(key, keys_.size());
    if (inserted) {
        keys_.push_back(key);
        counts_.push_back(count);
    } else {
        counts_[it->second] += count;
    }
    total_ += count;
}

std::int64_t MarginalTable::count_for(std::uint64_t key) const {
    auto it = index_.find(key);
    return it == index_.end() ? 0 : counts_[it->second];
}

std::uint64_t MarginalTable::pack(const Cell& full_cell) const {
    std::uint64_t key = 0;
    for (std::size_t k = 0; k < subset_.size(); ++k) {
        key = key * static_cast<std::uint64_t>(radix_[k]) +
              full_cell[static_cast<std::size_t>(subset_[k])];
    }
    return key;
}

std::vector<int> MarginalTable::unpack(std::uint64_t key) const {
    std::vector<int> idx(subset_.size(), 0);
    for (std::size_t k = subset_.size(); k-- > 0;) {
        idx[k] = static_cast<int>(key % static_cast<std::uint64_t>(radix_[k]));
        key /= static_cast<std::uint64_t>(radix_[k]);
    }
    return idx;
}

double MarginalTable::loglik_term() const {
    const double log_total = std::log(static_cast<double>(total_));
    double sum = 0.0;
    for (std::int64_t c : counts_) {
        sum += static_cast<double>(c) * (std::log(static_cast<double>(c)) - log_total);
    }
    return sum;
}

SparseTable::SparseTable(Schema schema, std::vector<Cell> records)
    : schema_(std::move(schema)), records_(std::move(records)) {
    const int m = schema_.variable_count();
    for (std::size_t row = 0; row < records_.size(); ++row) {
        const Cell& cell = records_[row];
        if (static_cast<int>(cell.size()) != m)
            throw DomainError("table: record " + std::to_string(row) + " has " +
                              std::to_string(cell.size()) + " fields, schema has " +
                              std::to_string(m));
        for (int v = 0; v < m; ++v) {
            if (cell[static_cast<std::size_t>(v)] >= schema_.cardinality(v))
                throw DomainError("table: record " + std::to_string(row) + " variable '" +
                                  schema_.variable(v).name + "' index out of range");
        }
        auto [it, inserted] = cell_index_.try_emplace(cell, cells_.size());
        if (inserted) {
            cells_.push_back(cell);
            counts_.push_back(1);
            first_rows_.push_back(static_cast<std::int64_t>(row));
        } else {
            ++counts_[it->second];
        }
    }
    if (schema_.population_size() < record_count())
        throw DomainError("table: population size " + std::to_string(schema_.population_size()) +
                          " smaller than record count " + std::to_string(record_count()));
}

std::int64_t SparseTable::count_for(const Cell& cell) const {
    auto it = cell_index_.find(cell);
    return it == cell_index_.end() ? 0 : counts_[it->second];
}

MarginalTable SparseTable::marginalize(const std::vector<int>& subset) const {
    if (subset.empty()) throw UsageError("marginalize: empty variable subset");
    std::vector<int> vars = subset;
    std::sort(vars.begin(), vars.end());
    if (std::adjacent_find(vars.begin(), vars.end()) != vars.end())
        throw UsageError("marginalize: duplicate variable in subset");
    std::vector<std::int64_t> radix;
    for (int v : vars) {
        if (v < 0 || v >= schema_.variable_count())
            throw UsageError("marginalize: variable id " + std::to_string(v) + " out of range");
        radix.push_back(schema_.cardinality(v));
    }
    MarginalTable out(std::move(vars), std::move(radix));
    for (std::size_t k = 0; k < cells_.size(); ++k) {
        out.add(out.pack(cells_[k]), counts_[k]);
    }
    return out;
}

SizeIndexTable SparseTable::size_indices() const {
    SizeIndexTable freq;
    for (std::int64_t c : counts_) ++freq[c];
    return freq;
}

std::vector<Cell> SparseTable::sample_uniques() const {
    std::vector<Cell> uniques;
    for (std::size_t k = 0; k < cells_.size(); ++k) {
        if (counts_[k] == 1) uniques.push_back(cells_[k]);
    }
    return uniques;
}

SparseTable ingest_csv(std::istream& in, const Schema& schema, bool skip_header) {
    const int m = schema.variable_count();
    std::vector<Cell> records;
    std::string line;
    std::size_t line_no = 0;
    bool header_pending = skip_header;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (header_pending) {
            header_pending = false;
            continue;
        }
        if (line.empty()) continue;
        std::vector<std::string> fields = split_csv_line(line);
        if (static_cast<int>(fields.size()) != m)
            throw DomainError("ingest: line " + std::to_string(line_no) + " has " +
                              std::to_string(fields.size()) + " fields, expected " +
                              std::to_string(m));
        Cell cell(static_cast<std::size_t>(m));
        for (int v = 0; v < m; ++v) {
            auto idx = schema.resolve_code(v, fields[static_cast<std::size_t>(v)]);
            if (!idx)
                throw DomainError("ingest: line " + std::to_string(line_no) + " variable '" +
                                  schema.variable(v).name + "': code '" +
                                  fields[static_cast<std::size_t>(v)] +
                                  "' not in dictionary and not an index in [0, " +
                                  std::to_string(schema.cardinality(v)) + ")");
            cell[static_cast<std::size_t>(v)] = static_cast<std::uint16_t>(*idx);
        }
        records.push_back(std::move(cell));
    }
    return SparseTable(schema, std::move(records));
}

Schema infer_code_dicts(std::istream& in, const Schema& schema, bool skip_header) {
    const int m = schema.variable_count();
    std::vector<std::set<std::string>> seen(static_cast<std::size_t>(m));
    std::string line;
    std::size_t line_no = 0;
    bool header_pending = skip_header;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (header_pending) {
            header_pending = false;
            continue;
        }
        if (line.empty()) continue;
        std::vector<std::string> fields = split_csv_line(line);
        if (static_cast<int>(fields.size()) != m)
            throw DomainError("ingest: line " + std::to_string(line_no) + " has " +
                              std::to_string(fields.size()) + " fields, expected " +
                              std::to_string(m));
        for (int v = 0; v < m; ++v) seen[static_cast<std::size_t>(v)].insert(fields[static_cast<std::size_t>(v)]);
    }

    std::vector<Variable> vars = schema.variables();
    for (int v = 0; v < m; ++v) {
        Variable& var = vars[static_cast<std::size_t>(v)];
        if (!var.codes.empty()) continue;
        const auto& codes = seen[static_cast<std::size_t>(v)];

        // already dense 0-based integers: keep the identity mapping
        bool dense = true;
        std::vector<std::pair<long long, std::string>> numeric;
        bool all_numeric = true;
        for (const auto& code : codes) {
            auto n = parse_ll(code);
            if (!n) {
                all_numeric = false;
                dense = false;
                break;
            }
            numeric.emplace_back(*n, code);
            if (*n < 0 || *n >= var.cardinality) dense = false;
        }
        if (dense) continue;

        if (codes.size() > static_cast<std::size_t>(var.cardinality))
            throw DomainError("infer: variable '" + var.name + "' has " +
                              std::to_string(codes.size()) + " distinct codes, cardinality is " +
                              std::to_string(var.cardinality));

        std::vector<std::string> ordered;
        if (all_numeric) {
            std::sort(numeric.begin(), numeric.end());
            for (const auto& [n, code] : numeric) ordered.push_back(code);
        } else {
            ordered.assign(codes.begin(), codes.end());  // std::set is already sorted
        }
        for (std::size_t k = 0; k < ordered.size(); ++k) {
            var.codes.to_index[ordered[k]] = static_cast<int>(k);
            var.codes.labels.push_back(ordered[k]);
        }
    }
    return Schema(std::move(vars), schema.population_size());
}

void write_csv(std::ostream& out, const SparseTable& table) {
    const Schema& schema = table.schema();
    const int m = schema.variable_count();
    for (const Cell& cell : table.records()) {
        for (int v = 0; v < m; ++v) {
            if (v) out << ',';
            out << schema.label_for(v, cell[static_cast<std::size_t>(v)]);
        }
        out << '\n';
    }
}

}  // namespace riskfold
