#include "jointdist.hpp"

#include "error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace nsbox {

namespace {

constexpr double kZeroEntry = 1e-15;
constexpr double kSumTol = 1e-12;

double entropy_of(const std::vector<double>& probs) {
    double h = 0.0;
    for (double p : probs)
        if (p > kZeroEntry) h -= p * std::log2(p);
    return h;
}

std::vector<std::string> concat(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::vector<std::string> out = a;
    for (const std::string& name : b)
        if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
    return out;
}

} // namespace

JointDistribution::JointDistribution(std::vector<VarSpec> vars, std::vector<double> probs)
    : vars_(std::move(vars)), probs_(std::move(probs)) {
    if (vars_.empty()) raise(ErrorCode::invalid_argument, "distribution needs at least one variable");
    std::size_t size = 1;
    for (const VarSpec& v : vars_) {
        if (v.size < 1) raise(ErrorCode::invalid_argument, "variable alphabet must be >= 1");
        if (v.name.empty()) raise(ErrorCode::invalid_argument, "variable name must be nonempty");
        size *= static_cast<std::size_t>(v.size);
    }
    for (std::size_t i = 0; i < vars_.size(); ++i)
        for (std::size_t j = i + 1; j < vars_.size(); ++j)
            if (vars_[i].name == vars_[j].name)
                raise(ErrorCode::invalid_argument, "duplicate variable name: " + vars_[i].name);
    if (probs_.size() != size)
        raise(ErrorCode::invalid_argument, "probability table size does not match alphabets");
    double sum = 0.0;
    for (double p : probs_) {
        if (p < -kZeroEntry) raise(ErrorCode::invalid_argument, "negative probability entry");
        sum += p;
    }
    if (std::abs(sum - 1.0) > kSumTol)
        raise(ErrorCode::invalid_argument, "probabilities sum to " + std::to_string(sum));

    strides_.assign(vars_.size(), 1);
    for (std::size_t i = vars_.size() - 1; i-- > 0;)
        strides_[i] = strides_[i + 1] * static_cast<std::size_t>(vars_[i + 1].size);
}

std::size_t JointDistribution::var_index(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i].name == name) return i;
    raise(ErrorCode::invalid_argument, "unknown variable: " + std::string(name));
}

JointDistribution JointDistribution::marginal(const std::vector<std::string>& keep) const {
    if (keep.empty()) raise(ErrorCode::invalid_argument, "marginal over empty variable set");
    std::vector<std::size_t> kept;
    for (const std::string& name : keep) kept.push_back(var_index(name));
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());

    std::vector<VarSpec> new_vars;
    std::vector<std::size_t> new_strides;
    std::size_t new_size = 1;
    for (std::size_t i : kept) {
        new_vars.push_back(vars_[i]);
        new_size *= static_cast<std::size_t>(vars_[i].size);
    }
    new_strides.assign(kept.size(), 1);
    for (std::size_t i = kept.size() - 1; i-- > 0;)
        new_strides[i] = new_strides[i + 1] * static_cast<std::size_t>(new_vars[i + 1].size);

    std::vector<double> out(new_size, 0.0);
    std::vector<int> assignment(vars_.size(), 0);
    for (std::size_t flat = 0; flat < probs_.size(); ++flat) {
        std::size_t target = 0;
        for (std::size_t j = 0; j < kept.size(); ++j)
            target += new_strides[j] * static_cast<std::size_t>(assignment[kept[j]]);
        out[target] += probs_[flat];
        for (std::size_t i = vars_.size(); i-- > 0;) {
            if (++assignment[i] < vars_[i].size) break;
            assignment[i] = 0;
        }
    }
    return JointDistribution(std::move(new_vars), std::move(out));
}

double JointDistribution::entropy(const std::vector<std::string>& over) const {
    return entropy_of(marginal(over).probs());
}

double JointDistribution::conditional_entropy(const std::vector<std::string>& target,
                                              const std::vector<std::string>& given) const {
    if (given.empty()) return entropy(target);
    return entropy(concat(target, given)) - entropy(given);
}

double JointDistribution::mutual_information(const std::vector<std::string>& lhs,
                                             const std::vector<std::string>& rhs) const {
    return entropy(lhs) + entropy(rhs) - entropy(concat(lhs, rhs));
}

double JointDistribution::conditional_mutual_information(const std::vector<std::string>& lhs,
                                                         const std::vector<std::string>& rhs,
                                                         const std::vector<std::string>& given) const {
    if (given.empty()) return mutual_information(lhs, rhs);
    return entropy(concat(lhs, given)) + entropy(concat(rhs, given)) - entropy(given) -
           entropy(concat(concat(lhs, rhs), given));
}

JointDistribution JointDistribution::apply_local_channel(
    const std::string& target, const std::vector<std::vector<double>>& kernel) const {
    const std::size_t t = var_index(target);
    const std::size_t old_size = static_cast<std::size_t>(vars_[t].size);
    if (kernel.size() != old_size)
        raise(ErrorCode::invalid_argument, "channel row count must match the target alphabet");
    const std::size_t new_size = kernel.empty() ? 0 : kernel[0].size();
    if (new_size < 1) raise(ErrorCode::invalid_argument, "channel needs at least one output value");
    for (const auto& row : kernel) {
        if (row.size() != new_size) raise(ErrorCode::invalid_argument, "ragged channel matrix");
        double sum = 0.0;
        for (double v : row) {
            if (v < -kZeroEntry) raise(ErrorCode::invalid_argument, "negative channel entry");
            sum += v;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            raise(ErrorCode::invalid_argument, "channel rows must sum to 1");
    }

    std::vector<VarSpec> new_vars = vars_;
    new_vars[t].size = static_cast<int>(new_size);
    const std::size_t inner = strides_[t]; // stride of the target variable
    const std::size_t outer = probs_.size() / (inner * old_size);

    std::vector<double> out(outer * new_size * inner, 0.0);
    for (std::size_t o = 0; o < outer; ++o)
        for (std::size_t old_v = 0; old_v < old_size; ++old_v)
            for (std::size_t in = 0; in < inner; ++in) {
                const double p = probs_[(o * old_size + old_v) * inner + in];
                if (p == 0.0) continue;
                for (std::size_t new_v = 0; new_v < new_size; ++new_v)
                    out[(o * new_size + new_v) * inner + in] += p * kernel[old_v][new_v];
            }
    return JointDistribution(std::move(new_vars), std::move(out));
}

bool JointDistribution::variables_independent(const std::vector<std::string>& over,
                                              double tol) const {
    JointDistribution joint = marginal(over);
    std::vector<JointDistribution> singles;
    for (const VarSpec& v : joint.vars()) singles.push_back(marginal({v.name}));

    std::vector<int> assignment(joint.vars().size(), 0);
    for (std::size_t flat = 0; flat < joint.probs().size(); ++flat) {
        double product = 1.0;
        for (std::size_t i = 0; i < singles.size(); ++i)
            product *= singles[i].probs()[static_cast<std::size_t>(assignment[i])];
        if (std::abs(joint.probs()[flat] - product) > tol) return false;
        for (std::size_t i = joint.vars().size(); i-- > 0;) {
            if (++assignment[i] < joint.vars()[i].size) break;
            assignment[i] = 0;
        }
    }
    return true;
}

std::string dist_to_json(const JointDistribution& d) {
    nlohmann::json j;
    nlohmann::json vars = nlohmann::json::array();
    for (const VarSpec& v : d.vars()) vars.push_back({{"name", v.name}, {"size", v.size}});
    j["vars"] = std::move(vars);
    j["probs"] = d.probs();
    return j.dump();
}

JointDistribution dist_from_json(std::string_view text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("vars") || !j.contains("probs"))
        raise(ErrorCode::parse_error, "distribution JSON must carry vars and probs");
    std::vector<VarSpec> vars;
    for (const auto& v : j["vars"]) {
        if (!v.is_object() || !v.contains("name") || !v.contains("size"))
            raise(ErrorCode::parse_error, "distribution vars must be {name, size} objects");
        vars.push_back(VarSpec{v["name"].get<std::string>(), v["size"].get<int>()});
    }
    if (!j["probs"].is_array()) raise(ErrorCode::parse_error, "distribution probs must be an array");
    std::vector<double> probs;
    for (const auto& p : j["probs"]) probs.push_back(p.get<double>());
    return JointDistribution(std::move(vars), std::move(probs));
}

bool ProofChainReport::all_hold() const {
    for (const InequalityCheck& check : checks)
        if (!check.holds) return false;
    return true;
}

ProofChainReport check_ic_proof_chain(const JointDistribution& d,
                                      const std::vector<std::string>& input_vars,
                                      const std::vector<std::string>& guess_vars,
                                      const std::vector<std::string>& blackbox_vars,
                                      const std::vector<std::string>& message_vars,
                                      double message_bits,
                                      const std::vector<double>& weights,
                                      bool include_superadditivity,
                                      double tol) {
    if (input_vars.empty()) raise(ErrorCode::invalid_argument, "no input variables named");
    if (guess_vars.size() != input_vars.size())
        raise(ErrorCode::invalid_argument, "need one guess variable per input variable");
    if (blackbox_vars.empty()) raise(ErrorCode::invalid_argument, "no black-box variables named");
    const std::size_t n = input_vars.size();
    std::vector<double> w = weights;
    if (w.empty()) w.assign(n + 1, 1.0);
    if (w.size() != n + 1)
        raise(ErrorCode::invalid_argument, "weights must be w0 followed by one weight per input");
    for (double v : w)
        if (v < 0) raise(ErrorCode::invalid_argument, "weights must be nonnegative");

    ProofChainReport report;
    auto add = [&](std::string name, std::string relation, double lhs, double rhs) {
        const double slack = relation == "<=" ? rhs - lhs : lhs - rhs;
        report.checks.push_back(
            InequalityCheck{std::move(name), std::move(relation), lhs, rhs, slack, slack >= -tol});
    };

    double info_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        info_sum += d.mutual_information({input_vars[i]}, {guess_vars[i]});
    add("ic_sum_bound", "<=", info_sum, message_bits);

    const double blackbox_info = d.mutual_information(input_vars, blackbox_vars);
    add("blackbox_information_bound", "<=", blackbox_info, message_bits);

    if (include_superadditivity) {
        if (n >= 2 && !d.variables_independent(input_vars, tol))
            raise(ErrorCode::invalid_argument,
                  "superadditivity check requires mutually independent inputs");
        double per_input = 0.0;
        for (const std::string& xi : input_vars)
            per_input += d.mutual_information({xi}, blackbox_vars);
        add("superadditivity", ">=", blackbox_info, per_input);
    }

    double guess_entropy_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lhs = d.conditional_entropy({input_vars[i]}, {guess_vars[i]});
        const double rhs = d.conditional_entropy({input_vars[i]}, blackbox_vars);
        add("guess_data_processing_" + std::to_string(i), ">=", lhs, rhs);
        guess_entropy_sum += lhs;
    }

    if (!message_vars.empty()) {
        const double message_entropy = d.entropy(message_vars);
        add("message_entropy_bound", ">=", message_entropy, blackbox_info);
        add("entropy_sum_bound", ">=", message_entropy + guess_entropy_sum, d.entropy(input_vars));

        double weighted_lhs = w[0] * message_entropy;
        double weighted_rhs = w[0] * blackbox_info;
        for (std::size_t i = 0; i < n; ++i) {
            weighted_lhs += w[i + 1] * d.conditional_entropy({input_vars[i]}, {guess_vars[i]});
            weighted_rhs += w[i + 1] * d.conditional_entropy({input_vars[i]}, blackbox_vars);
        }
        add("weighted_entropy_bound", ">=", weighted_lhs, weighted_rhs);
    }
    return report;
}

std::string proof_report_to_json(const ProofChainReport& report) {
    nlohmann::json j;
    nlohmann::json checks = nlohmann::json::array();
    for (const InequalityCheck& check : report.checks)
        checks.push_back({{"name", check.name},
                          {"relation", check.relation},
                          {"lhs", check.lhs},
                          {"rhs", check.rhs},
                          {"slack", check.slack},
                          {"holds", check.holds}});
    j["checks"] = std::move(checks);
    j["allHold"] = report.all_hold();
    return j.dump();
}

} // namespace nsbox
