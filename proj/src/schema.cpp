#include "riskfold/schema.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <unordered_set>

#include <json.hpp>

#include "riskfold/errors.hpp"

namespace riskfold {

namespace {

std::optional<int> parse_int(const std::string& s) {
    int value = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) return std::nullopt;
    return value;
}

}  // namespace

Schema::Schema(std::vector<Variable> variables, std::int64_t population_size)
    : vars_(std::move(variables)), population_size_(population_size) {
    if (vars_.empty()) throw DomainError("schema: needs at least one variable");
    std::unordered_set<std::string> names;
    for (const auto& v : vars_) {
        if (v.cardinality < 1)
            throw DomainError("schema: variable '" + v.name + "' has cardinality < 1");
        if (!names.insert(v.name).second)
            throw DomainError("schema: duplicate variable name '" + v.name + "'");
        for (const auto& [code, idx] : v.codes.to_index) {
            if (idx < 0 || idx >= v.cardinality)
                throw DomainError("schema: code '" + code + "' of variable '" + v.name +
                                  "' maps outside [0, " + std::to_string(v.cardinality) + ")");
        }
    }
    if (population_size_ < 1) throw DomainError("schema: population size must be positive");
}

void Schema::set_population_size(std::int64_t n) {
    if (n < 1) throw DomainError("schema: population size must be positive");
    population_size_ = n;
}

std::string Schema::label_for(int v, int idx) const {
    const auto& labels = vars_.at(static_cast<std::size_t>(v)).codes.labels;
    if (idx >= 0 && static_cast<std::size_t>(idx) < labels.size() && !labels[idx].empty())
        return labels[idx];
    return std::to_string(idx);
}

std::optional<int> Schema::resolve_code(int v, const std::string& code) const {
    const Variable& var = vars_.at(static_cast<std::size_t>(v));
    if (!var.codes.empty()) {
        auto it = var.codes.to_index.find(code);
        if (it != var.codes.to_index.end()) return it->second;
    }
    auto as_int = parse_int(code);
    if (as_int && *as_int >= 0 && *as_int < var.cardinality) return *as_int;
    return std::nullopt;
}

Schema load_schema(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("schema: invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("variables") || !doc.contains("population_size"))
        throw DomainError("schema: expected object with 'variables' and 'population_size'");

    std::vector<Variable> vars;
    for (const auto& jv : doc.at("variables")) {
        Variable var;
        var.name = jv.at("name").get<std::string>();
        var.cardinality = jv.at("cardinality").get<int>();
        if (jv.contains("codes")) {
            const auto& jc = jv.at("codes");
            if (jc.is_array()) {
                int idx = 0;
                for (const auto& code : jc) {
                    var.codes.to_index[code.get<std::string>()] = idx;
                    var.codes.labels.push_back(code.get<std::string>());
                    ++idx;
                }
            } else if (jc.is_object()) {
                for (auto it = jc.begin(); it != jc.end(); ++it) {
                    int idx = it.value().get<int>();
                    var.codes.to_index[it.key()] = idx;
                    if (idx >= 0) {
                        if (var.codes.labels.size() <= static_cast<std::size_t>(idx))
                            var.codes.labels.resize(static_cast<std::size_t>(idx) + 1);
                        var.codes.labels[static_cast<std::size_t>(idx)] = it.key();
                    }
                }
            } else {
                throw DomainError("schema: 'codes' of '" + var.name + "' must be array or object");
            }
        }
        vars.push_back(std::move(var));
    }
    return Schema(std::move(vars), doc.at("population_size").get<std::int64_t>());
}

Schema load_schema_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("schema: cannot open '" + path + "'");
    return load_schema(in);
}

std::string schema_to_json(const Schema& schema) {
    nlohmann::json doc;
    doc["population_size"] = schema.population_size();
    doc["variables"] = nlohmann::json::array();
    for (const auto& v : schema.variables()) {
        nlohmann::json jv;
        jv["name"] = v.name;
        jv["cardinality"] = v.cardinality;
        if (!v.codes.empty()) {
            // emit the object form so sparse label sets round-trip
            nlohmann::json jc = nlohmann::json::object();
            for (const auto& [code, idx] : v.codes.to_index) jc[code] = idx;
            jv["codes"] = jc;
        }
        doc["variables"].push_back(jv);
    }
    return doc.dump(2) + "\n";
}

}  // namespace riskfold
