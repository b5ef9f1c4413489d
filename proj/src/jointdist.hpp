#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace nsbox {

struct VarSpec {
    std::string name;
    int size = 2;
};

/// A finite joint distribution over named classical variables. Probabilities
/// are doubles stored row-major with the last variable varying fastest.
/// Entries must be nonnegative and sum to 1 within 1e-12; entries below 1e-15
/// are treated as exact zeros by entropy terms.
class JointDistribution {
public:
    JointDistribution(std::vector<VarSpec> vars, std::vector<double> probs);

    const std::vector<VarSpec>& vars() const { return vars_; }
    const std::vector<double>& probs() const { return probs_; }
    std::size_t var_index(std::string_view name) const;

    /// Marginal over the named variables, kept in their original order.
    JointDistribution marginal(const std::vector<std::string>& keep) const;

    double entropy(const std::vector<std::string>& over) const;
    double conditional_entropy(const std::vector<std::string>& target,
                               const std::vector<std::string>& given) const;
    double mutual_information(const std::vector<std::string>& lhs,
                              const std::vector<std::string>& rhs) const;
    double conditional_mutual_information(const std::vector<std::string>& lhs,
                                          const std::vector<std::string>& rhs,
                                          const std::vector<std::string>& given) const;

    /// Pushes one variable through a row-stochastic kernel[old][new]; other
    /// variables keep their joint statistics with the pre-image except through
    /// the channel. The new alphabet size is the kernel's column count.
    JointDistribution apply_local_channel(const std::string& target,
                                          const std::vector<std::vector<double>>& kernel) const;

    /// True when the joint over the named variables factorizes into the
    /// product of its single-variable marginals within tol.
    bool variables_independent(const std::vector<std::string>& over, double tol) const;

private:
    std::vector<VarSpec> vars_;
    std::vector<double> probs_;
    std::vector<std::size_t> strides_;
};

std::string dist_to_json(const JointDistribution& d);
JointDistribution dist_from_json(std::string_view text);

struct InequalityCheck {
    std::string name;
    std::string relation; // "<=" or ">="
    double lhs = 0;
    double rhs = 0;
    double slack = 0; // satisfaction margin; negative means violated
    bool holds = false;
};

struct ProofChainReport {
    std::vector<InequalityCheck> checks;
    bool all_hold() const;
};

/// Evaluates the chain of classical inequalities behind the information
/// bound on one joint distribution: the per-bit information sum against the
/// message capacity, the black-box information bound, superadditivity for
/// independent inputs, the message-entropy bound, per-guess data processing,
/// the summed entropy bound, and its weighted form (weights w0 then w_i,
/// defaulting to all ones).
///
/// `blackbox_vars` names Bob's whole post-message system e; `message_vars`
/// may be empty, which skips the message-entropy checks. Superadditivity
/// requires mutually independent inputs and raises otherwise unless
/// `include_superadditivity` is false.
ProofChainReport check_ic_proof_chain(const JointDistribution& d,
                                      const std::vector<std::string>& input_vars,
                                      const std::vector<std::string>& guess_vars,
                                      const std::vector<std::string>& blackbox_vars,
                                      const std::vector<std::string>& message_vars,
                                      double message_bits,
                                      const std::vector<double>& weights = {},
                                      bool include_superadditivity = true,
                                      double tol = 1e-9);

std::string proof_report_to_json(const ProofChainReport& report);

} // namespace nsbox
