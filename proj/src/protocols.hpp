#pragma once

#include "box.hpp"
#include "rational.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace nsbox {

inline constexpr int kMaxTreeDepth = 24;
inline constexpr int kMaxRacDepth = 16;
inline constexpr int kMaxGeneralExactDepth = 3;

/// Complete binary tree of box pairs for the concatenated random access code:
/// depth n encodes 2^n input bits through 2^n - 1 pairs and one transmitted
/// bit. Pairs are numbered bottom-up in level order, leaf level first (left
/// to right), root pair last. Level 1 holds the leaves, level `depth` the root.
struct ConcatTree {
    int depth = 1;

    uint64_t pair_count() const { return (uint64_t{1} << depth) - 1; }
    uint64_t bit_count() const { return uint64_t{1} << depth; }
    uint64_t root() const { return pair_count() - 1; }

    uint64_t level_offset(int level) const;
    uint64_t pair_index(int level, uint64_t pos) const { return level_offset(level) + pos; }
    /// Children of an internal pair (level >= 2): left covers the lower half
    /// of the subtree's input bits.
    std::pair<uint64_t, uint64_t> children(int level, uint64_t pos) const;
    /// Adjacent input bits fed to a leaf pair.
    std::pair<uint64_t, uint64_t> leaf_input_bits(uint64_t leaf_pos) const;

    struct PathStep {
        uint64_t pair;
        int level;
        int bob_input; // branch bit of k at this level
    };
    /// The n pairs Bob uses to decode bit k, root first.
    std::vector<PathStep> decode_path(uint64_t k) const;
};

ConcatTree build_concatenation_tree(int depth, int max_depth = kMaxTreeDepth);

/// Exact sampler for one bit: emits 0 with probability p0 from a uniform
/// 64-bit draw, deciding r/2^64 < p0 in exact arithmetic.
class BitSampler {
public:
    BitSampler() : BitSampler(Rational(0)) {}
    explicit BitSampler(const Rational& p0);
    int sample(uint64_t r) const;

private:
    bool fast_ = true;
    unsigned __int128 threshold_ = 0; // numerator << 64
    uint64_t den_ = 1;
    Rational p0_;
};

/// Samples a validated (2,2,2,2) box in two stages: Alice's outcome from her
/// marginal (which never reads y), then Bob's from the conditional given
/// (a, x, y). The composition reproduces the joint P(a,b|x,y) exactly.
class BoxSampler {
public:
    explicit BoxSampler(const BoxPoint& box);
    int sample_alice(int x, uint64_t r) const { return alice_[x].sample(r); }
    int sample_bob(int a, int x, int y, uint64_t r) const { return bob_[a][x][y].sample(r); }

private:
    BitSampler alice_[2];
    BitSampler bob_[2][2][2];
};

/// Alice's half of the oblivious-transfer round. Produced before Bob's index
/// exists: it depends only on her bits and her box outcome.
struct OtAliceState {
    int x; // x0 xor x1, her box input
    int a; // her box outcome
    int m; // x0 xor a, the transmitted bit
};

OtAliceState ot_alice_encode(const BoxSampler& sampler, int x0, int x1, uint64_t seed,
                             uint64_t trial);
int ot_bob_decode(const BoxSampler& sampler, const OtAliceState& alice, int k, uint64_t seed,
                  uint64_t trial);

/// One full oblivious-transfer round; returns Bob's decoded bit C = m xor b.
int run_ot(const BoxPoint& box, int x0, int x1, int k, uint64_t seed, uint64_t trial);

struct RacConfig {
    int depth = 1;
    std::vector<BoxPoint> boxes; // one box reused for every pair, or 2^depth - 1 per-pair boxes
    uint64_t trials = 0;
    uint64_t seed = 0;
};

struct RacResult {
    int depth = 1;
    uint64_t trials = 0;
    uint64_t seed = 0;
    std::vector<Rational> exact_success; // per bit index; empty when not computable
    std::vector<Rational> exact_bias;    // 2 * success - 1
    std::vector<uint64_t> successes;     // per bit index; empty when trials == 0
    std::vector<double> std_error;
    double ic_sum = 0.0;
    bool ic_violated = false;
};

/// Exact per-bit success probabilities. Boxes whose four CHSH cells share one
/// winning probability follow the error-parity product law at any depth; for
/// other boxes the result comes from exhaustive enumeration over all pair
/// outcomes, limited to depth <= 3.
RacResult rac_exact(const RacConfig& cfg);

/// Seeded simulation of the full message flow. Every trial runs Alice's
/// cascade once, then decodes every bit index, so each bit accumulates
/// `trials` attempts. Deterministic given (seed, trial) regardless of job
/// count. Optional transcript receives one line per trial.
RacResult rac_monte_carlo(const RacConfig& cfg, int jobs = 1, std::string* transcript = nullptr);

/// Exact fields when computable plus empirical fields when trials > 0.
RacResult rac_run(const RacConfig& cfg, int jobs = 1, std::string* transcript = nullptr);

std::string rac_result_to_json(const RacResult& result);

} // namespace nsbox
