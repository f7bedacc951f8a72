#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace riskfold {

// Maps raw category codes (arbitrary text labels like "00" or "52") to dense
// 0-based indices. labels[k] is the raw code emitted for index k; labels may be
// shorter than the cardinality when only part of the range is dictionary-backed.
struct CodeDict {
    std::unordered_map<std::string, int> to_index;
    std::vector<std::string> labels;

    bool empty() const { return to_index.empty(); }
};

struct Variable {
    std::string name;
    int cardinality = 0;
    CodeDict codes;  // optional; empty means raw codes are the indices themselves
};

// Ordered key variables plus the population size the sample was drawn from.
class Schema {
public:
    Schema() = default;
    Schema(std::vector<Variable> variables, std::int64_t population_size);

    int variable_count() const { return static_cast<int>(vars_.size()); }
    const Variable& variable(int v) const { return vars_.at(static_cast<std::size_t>(v)); }
    const std::vector<Variable>& variables() const { return vars_; }
    int cardinality(int v) const { return vars_.at(static_cast<std::size_t>(v)).cardinality; }
    std::int64_t population_size() const { return population_size_; }
    void set_population_size(std::int64_t n);

    // Raw code for index `idx` of variable `v`: dictionary label when one is
    // defined for that index, the decimal index otherwise.
    std::string label_for(int v, int idx) const;

    // Dictionary lookup first, then the in-range-integer fallback.
    // Returns nullopt when the code resolves to nothing valid.
    std::optional<int> resolve_code(int v, const std::string& code) const;

private:
    std::vector<Variable> vars_;
    std::int64_t population_size_ = 0;
};

// Reads a schema config: a JSON document with "population_size" and a
// "variables" array of {"name", "cardinality", optional "codes"} entries.
// "codes" is either an array (position = index) or an object {code: index}.
Schema load_schema(std::istream& in);
Schema load_schema_file(const std::string& path);

std::string schema_to_json(const Schema& schema);

}  // namespace riskfold
