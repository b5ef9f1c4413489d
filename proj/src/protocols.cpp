#include "protocols.hpp"

#include "error.hpp"
#include "infotheory.hpp"
#include "rng.hpp"

#include <json.hpp>

#include <cmath>
#include <thread>

namespace nsbox {

namespace {

void require_valid_chsh_box(const BoxPoint& box, const char* what) {
    if (!box.scenario().is_chsh())
        raise(ErrorCode::invalid_argument, std::string(what) + " requires (2,2,2,2) boxes");
    if (!validate(box).all_pass())
        raise(ErrorCode::validation_failed, std::string(what) + " requires a valid no-signaling box");
}

void check_config(const RacConfig& cfg) {
    if (cfg.depth < 1) raise(ErrorCode::invalid_argument, "rac depth must be >= 1");
    if (cfg.depth > kMaxRacDepth)
        raise(ErrorCode::cap_exceeded,
              "rac depth " + std::to_string(cfg.depth) + " exceeds cap " + std::to_string(kMaxRacDepth));
    const uint64_t pairs = (uint64_t{1} << cfg.depth) - 1;
    if (cfg.boxes.size() != 1 && cfg.boxes.size() != pairs)
        raise(ErrorCode::invalid_argument, "rac config needs one box or one box per pair");
    for (const BoxPoint& box : cfg.boxes) require_valid_chsh_box(box, "rac");
}

const BoxPoint& pair_box(const RacConfig& cfg, uint64_t pair) {
    return cfg.boxes.size() == 1 ? cfg.boxes.front() : cfg.boxes[pair];
}

/// Winning probability of the CHSH cell (x, y): P(a xor b = xy | x, y).
Rational cell_win(const BoxPoint& box, int x, int y) {
    Rational sum;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            if ((a ^ b) == (x & y)) sum += box.prob(x, y, a, b);
    return sum;
}

/// A box is correlation-uniform when all four cells share one winning
/// probability; then each pair errs independently of everything else and the
/// parity law applies.
bool correlation_uniform(const BoxPoint& box, Rational& bias_out) {
    Rational w = cell_win(box, 0, 0);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            if (cell_win(box, x, y) != w) return false;
    bias_out = Rational(2) * w - Rational(1);
    return true;
}

double empirical_rate(uint64_t successes, uint64_t trials) {
    return trials == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(trials);
}

void fill_ic_sum(RacResult& result) {
    double sum = 0.0;
    if (!result.exact_success.empty()) {
        for (const Rational& p : result.exact_success) sum += 1.0 - binary_entropy(p.to_double());
    } else if (!result.successes.empty()) {
        for (uint64_t s : result.successes)
            sum += 1.0 - binary_entropy(empirical_rate(s, result.trials));
    }
    result.ic_sum = sum;
    result.ic_violated = sum > 1.0;
}

// Exhaustive exact evaluation for arbitrary boxes: averages over all input
// assignments and Alice outcome patterns, propagating Bob's conditional
// error parity along the decode path.
std::vector<Rational> general_exact_success(const RacConfig& cfg, const ConcatTree& tree) {
    const int n = tree.depth;
    const uint64_t bits = tree.bit_count();
    const uint64_t pairs = tree.pair_count();

    struct PairWiring {
        bool leaf;
        uint64_t in0, in1; // bit positions (leaf) or child pair indices
    };
    std::vector<PairWiring> wiring(pairs);
    for (int level = 1; level <= n; ++level) {
        const uint64_t width = uint64_t{1} << (n - level);
        for (uint64_t pos = 0; pos < width; ++pos) {
            const uint64_t p = tree.pair_index(level, pos);
            if (level == 1) {
                auto [b0, b1] = tree.leaf_input_bits(pos);
                wiring[p] = {true, b0, b1};
            } else {
                auto [c0, c1] = tree.children(level, pos);
                wiring[p] = {false, c0, c1};
            }
        }
    }

    std::vector<Rational> success(bits, Rational(0));
    std::vector<int> msg(pairs), a_of(pairs), x_of(pairs);

    for (uint64_t k = 0; k < bits; ++k) {
        const auto path = tree.decode_path(k);
        Rational total;

        // DFS over Alice outcome assignments for one fixed input word.
        auto walk = [&](auto&& self, uint64_t xbar, uint64_t pair, const Rational& weight) -> void {
            if (pair == pairs) {
                // Parity of Bob's outputs along the path, conditioned on the
                // recorded (a, x) of each path pair.
                Rational even(1), odd(0);
                for (const auto& step : path) {
                    const BoxPoint& box = pair_box(cfg, step.pair);
                    const Rational joint0 = box.prob(x_of[step.pair], step.bob_input, a_of[step.pair], 0);
                    const Rational marg = box.marginal_alice(a_of[step.pair], x_of[step.pair], step.bob_input);
                    const Rational q0 = joint0 / marg;
                    const Rational q1 = Rational(1) - q0;
                    Rational new_even = even * q0 + odd * q1;
                    odd = even * q1 + odd * q0;
                    even = std::move(new_even);
                }
                const int target = msg[tree.root()] ^ static_cast<int>((xbar >> k) & 1);
                total += weight * (target == 0 ? even : odd);
                return;
            }
            const PairWiring& w = wiring[pair];
            const int u0 = w.leaf ? static_cast<int>((xbar >> w.in0) & 1) : msg[w.in0];
            const int u1 = w.leaf ? static_cast<int>((xbar >> w.in1) & 1) : msg[w.in1];
            const int x = u0 ^ u1;
            const BoxPoint& box = pair_box(cfg, pair);
            for (int a = 0; a < 2; ++a) {
                const Rational marg = box.marginal_alice(a, x, 0);
                if (marg.is_zero()) continue;
                a_of[pair] = a;
                x_of[pair] = x;
                msg[pair] = u0 ^ a;
                self(self, xbar, pair + 1, weight * marg);
            }
        };

        for (uint64_t xbar = 0; xbar < (uint64_t{1} << bits); ++xbar)
            walk(walk, xbar, 0, Rational(1));

        success[k] = total / Rational(int64_t{1} << bits);
    }
    return success;
}

struct TrialTally {
    std::vector<uint64_t> successes;
    std::string transcript;
};

} // namespace

uint64_t ConcatTree::level_offset(int level) const {
    return (uint64_t{1} << depth) - (uint64_t{1} << (depth - level + 1));
}

std::pair<uint64_t, uint64_t> ConcatTree::children(int level, uint64_t pos) const {
    if (level < 2) raise(ErrorCode::invalid_argument, "leaf pairs have no children");
    return {pair_index(level - 1, 2 * pos), pair_index(level - 1, 2 * pos + 1)};
}

std::pair<uint64_t, uint64_t> ConcatTree::leaf_input_bits(uint64_t leaf_pos) const {
    return {2 * leaf_pos, 2 * leaf_pos + 1};
}

std::vector<ConcatTree::PathStep> ConcatTree::decode_path(uint64_t k) const {
    if (k >= bit_count()) raise(ErrorCode::invalid_argument, "decode index out of range");
    std::vector<PathStep> path;
    path.reserve(depth);
    for (int level = depth; level >= 1; --level) {
        const uint64_t pos = k >> level;
        const int branch = static_cast<int>((k >> (level - 1)) & 1);
        path.push_back(PathStep{pair_index(level, pos), level, branch});
    }
    return path;
}

ConcatTree build_concatenation_tree(int depth, int max_depth) {
    if (depth < 1 || depth > max_depth)
        raise(ErrorCode::invalid_argument,
              "tree depth must lie in [1, " + std::to_string(max_depth) + "]");
    return ConcatTree{depth};
}

BitSampler::BitSampler(const Rational& p0) : p0_(p0) {
    if (p0.sign() < 0 || p0 > Rational(1))
        raise(ErrorCode::invalid_argument, "bit probability outside [0,1]");
    if (p0.den().fits_u64() && p0.den().to_u64() < (uint64_t{1} << 32)) {
        fast_ = true;
        den_ = p0.den().to_u64();
        threshold_ = static_cast<unsigned __int128>(p0.num().to_u64()) << 64;
    } else {
        fast_ = false;
    }
}

int BitSampler::sample(uint64_t r) const {
    if (fast_) {
        return static_cast<unsigned __int128>(r) * den_ < threshold_ ? 0 : 1;
    }
    // r / 2^64 < num/den  <=>  r * den < num * 2^64
    static const BigInt two64 = BigInt::from_u64(UINT64_MAX) + BigInt(1);
    return (BigInt::from_u64(r) * p0_.den()) < (p0_.num() * two64) ? 0 : 1;
}

BoxSampler::BoxSampler(const BoxPoint& box) {
    require_valid_chsh_box(box, "box sampler");
    for (int x = 0; x < 2; ++x) alice_[x] = BitSampler(box.marginal_alice(0, x, 0));
    for (int a = 0; a < 2; ++a)
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y) {
                const Rational marg = box.marginal_alice(a, x, y);
                // Unreachable branch when Alice never outputs a on input x.
                bob_[a][x][y] = marg.is_zero() ? BitSampler(Rational(1))
                                               : BitSampler(box.prob(x, y, a, 0) / marg);
            }
}

OtAliceState ot_alice_encode(const BoxSampler& sampler, int x0, int x1, uint64_t seed,
                             uint64_t trial) {
    const int x = (x0 ^ x1) & 1;
    const int a = sampler.sample_alice(x, counter_draw(seed, trial, 0));
    return OtAliceState{x, a, (x0 & 1) ^ a};
}

int ot_bob_decode(const BoxSampler& sampler, const OtAliceState& alice, int k, uint64_t seed,
                  uint64_t trial) {
    const int b = sampler.sample_bob(alice.a, alice.x, k & 1, counter_draw(seed, trial, 1));
    return alice.m ^ b;
}

int run_ot(const BoxPoint& box, int x0, int x1, int k, uint64_t seed, uint64_t trial) {
    BoxSampler sampler(box);
    const OtAliceState alice = ot_alice_encode(sampler, x0, x1, seed, trial);
    return ot_bob_decode(sampler, alice, k, seed, trial);
}

RacResult rac_exact(const RacConfig& cfg) {
    check_config(cfg);
    const ConcatTree tree = build_concatenation_tree(cfg.depth);

    RacResult result;
    result.depth = cfg.depth;
    result.trials = 0;
    result.seed = cfg.seed;

    std::vector<Rational> biases;
    bool uniform = true;
    biases.reserve(cfg.boxes.size());
    for (const BoxPoint& box : cfg.boxes) {
        Rational bias;
        if (!correlation_uniform(box, bias)) {
            uniform = false;
            break;
        }
        biases.push_back(std::move(bias));
    }

    if (uniform) {
        const Rational half(1, 2);
        for (uint64_t k = 0; k < tree.bit_count(); ++k) {
            Rational product(1);
            for (const auto& step : tree.decode_path(k))
                product *= biases[cfg.boxes.size() == 1 ? 0 : step.pair];
            result.exact_bias.push_back(product);
            result.exact_success.push_back(half * (Rational(1) + product));
        }
    } else {
        if (cfg.depth > kMaxGeneralExactDepth)
            raise(ErrorCode::unsupported,
                  "exact evaluation of non-uniform boxes is limited to depth <= " +
                      std::to_string(kMaxGeneralExactDepth) + "; use Monte Carlo for deeper trees");
        result.exact_success = general_exact_success(cfg, tree);
        for (const Rational& p : result.exact_success)
            result.exact_bias.push_back(Rational(2) * p - Rational(1));
    }
    fill_ic_sum(result);
    return result;
}

RacResult rac_monte_carlo(const RacConfig& cfg, int jobs, std::string* transcript) {
    check_config(cfg);
    if (cfg.trials < 1) raise(ErrorCode::invalid_argument, "rac_monte_carlo needs trials >= 1");
    if (jobs < 1) raise(ErrorCode::invalid_argument, "jobs must be >= 1");

    const ConcatTree tree = build_concatenation_tree(cfg.depth);
    const uint64_t pairs = tree.pair_count();
    const uint64_t bits = tree.bit_count();
    const int n = tree.depth;

    std::vector<BoxSampler> samplers;
    samplers.reserve(cfg.boxes.size());
    for (const BoxPoint& box : cfg.boxes) samplers.emplace_back(box);
    auto sampler_for = [&](uint64_t pair) -> const BoxSampler& {
        return samplers.size() == 1 ? samplers.front() : samplers[pair];
    };

    struct PairWiring {
        bool leaf;
        uint64_t in0, in1;
    };
    std::vector<PairWiring> wiring(pairs);
    for (int level = 1; level <= n; ++level) {
        const uint64_t width = uint64_t{1} << (n - level);
        for (uint64_t pos = 0; pos < width; ++pos) {
            const uint64_t p = tree.pair_index(level, pos);
            if (level == 1) {
                auto [b0, b1] = tree.leaf_input_bits(pos);
                wiring[p] = {true, b0, b1};
            } else {
                auto [c0, c1] = tree.children(level, pos);
                wiring[p] = {false, c0, c1};
            }
        }
    }

    // Stream layout per trial: [0,pairs) Alice draws, then bits*n Bob draws
    // addressed by (k, level), then the input words.
    const uint64_t bob_base = pairs;
    const uint64_t xbar_base = pairs + bits * static_cast<uint64_t>(n);
    const uint64_t xbar_words = (bits + 63) / 64;

    auto run_chunk = [&](uint64_t t_begin, uint64_t t_end, bool want_transcript) {
        TrialTally tally;
        tally.successes.assign(bits, 0);
        std::vector<int> msg(pairs), a_of(pairs), x_of(pairs);
        std::vector<uint64_t> xbar(xbar_words);
        std::string guesses, oks;
        for (uint64_t t = t_begin; t < t_end; ++t) {
            for (uint64_t w = 0; w < xbar_words; ++w)
                xbar[w] = counter_draw(cfg.seed, t, xbar_base + w);
            auto input_bit = [&](uint64_t k) -> int {
                return static_cast<int>((xbar[k / 64] >> (k % 64)) & 1);
            };

            // Alice's cascade: her phase touches her bits and her box outcomes
            // only; no decode index exists yet.
            for (uint64_t p = 0; p < pairs; ++p) {
                const PairWiring& w = wiring[p];
                const int u0 = w.leaf ? input_bit(w.in0) : msg[w.in0];
                const int u1 = w.leaf ? input_bit(w.in1) : msg[w.in1];
                const int x = u0 ^ u1;
                const int a = sampler_for(p).sample_alice(x, counter_draw(cfg.seed, t, p));
                msg[p] = u0 ^ a;
                a_of[p] = a;
                x_of[p] = x;
            }
            const int m = msg[tree.root()];

            if (want_transcript) {
                guesses.clear();
                oks.clear();
            }
            for (uint64_t k = 0; k < bits; ++k) {
                int cur = m;
                int level_slot = 0;
                for (const auto& step : tree.decode_path(k)) {
                    const uint64_t stream = bob_base + k * static_cast<uint64_t>(n) + level_slot++;
                    const int b = sampler_for(step.pair)
                                      .sample_bob(a_of[step.pair], x_of[step.pair], step.bob_input,
                                                  counter_draw(cfg.seed, t, stream));
                    cur ^= b;
                }
                const bool ok = cur == input_bit(k);
                tally.successes[k] += ok ? 1 : 0;
                if (want_transcript) {
                    guesses.push_back(cur ? '1' : '0');
                    oks.push_back(ok ? '1' : '0');
                }
            }
            if (want_transcript) {
                std::string in;
                for (uint64_t k = 0; k < bits; ++k) in.push_back(input_bit(k) ? '1' : '0');
                tally.transcript += std::to_string(t) + "," + in + "," + std::to_string(m) + "," +
                                    guesses + "," + oks + "\n";
            }
        }
        return tally;
    };

    const uint64_t n_jobs = std::min<uint64_t>(static_cast<uint64_t>(jobs), cfg.trials);
    std::vector<TrialTally> tallies(n_jobs);
    if (n_jobs <= 1) {
        tallies[0] = run_chunk(0, cfg.trials, transcript != nullptr);
    } else {
        std::vector<std::thread> workers;
        const uint64_t chunk = (cfg.trials + n_jobs - 1) / n_jobs;
        for (uint64_t j = 0; j < n_jobs; ++j) {
            const uint64_t begin = j * chunk;
            const uint64_t end = std::min(cfg.trials, begin + chunk);
            workers.emplace_back([&, j, begin, end] {
                tallies[j] = run_chunk(begin, end, transcript != nullptr);
            });
        }
        for (auto& w : workers) w.join();
    }

    RacResult result;
    result.depth = cfg.depth;
    result.trials = cfg.trials;
    result.seed = cfg.seed;
    result.successes.assign(bits, 0);
    for (const TrialTally& tally : tallies)
        for (uint64_t k = 0; k < bits; ++k) result.successes[k] += tally.successes[k];
    if (transcript)
        for (const TrialTally& tally : tallies) *transcript += tally.transcript;

    result.std_error.reserve(bits);
    for (uint64_t k = 0; k < bits; ++k) {
        const double p = empirical_rate(result.successes[k], cfg.trials);
        result.std_error.push_back(std::sqrt(p * (1.0 - p) / static_cast<double>(cfg.trials)));
    }
    fill_ic_sum(result);
    return result;
}

RacResult rac_run(const RacConfig& cfg, int jobs, std::string* transcript) {
    check_config(cfg);
    bool exact_possible = true;
    Rational bias;
    for (const BoxPoint& box : cfg.boxes)
        if (!correlation_uniform(box, bias)) {
            exact_possible = cfg.depth <= kMaxGeneralExactDepth;
            break;
        }
    if (!exact_possible && cfg.trials == 0)
        raise(ErrorCode::unsupported,
              "exact evaluation unavailable for this configuration; set trials >= 1");

    RacResult result = exact_possible ? rac_exact(cfg) : RacResult{};
    if (!exact_possible) {
        result.depth = cfg.depth;
        result.seed = cfg.seed;
    }
    if (cfg.trials > 0) {
        RacResult mc = rac_monte_carlo(cfg, jobs, transcript);
        result.trials = mc.trials;
        result.successes = std::move(mc.successes);
        result.std_error = std::move(mc.std_error);
        if (result.exact_success.empty()) {
            result.ic_sum = mc.ic_sum;
            result.ic_violated = mc.ic_violated;
        }
    }
    return result;
}

std::string rac_result_to_json(const RacResult& result) {
    nlohmann::json j;
    j["n"] = result.depth;
    j["trials"] = result.trials;
    j["seed"] = result.seed;
    j["icSum"] = result.ic_sum;
    j["violated"] = result.ic_violated;
    nlohmann::json per_bit = nlohmann::json::array();
    const std::size_t bits = result.exact_success.empty() ? result.successes.size()
                                                          : result.exact_success.size();
    for (std::size_t k = 0; k < bits; ++k) {
        nlohmann::json row;
        row["k"] = k;
        if (!result.exact_success.empty()) {
            row["exact"] = result.exact_success[k].str();
            row["bias"] = result.exact_bias[k].str();
        }
        if (!result.successes.empty()) {
            row["successes"] = result.successes[k];
            row["trials"] = result.trials;
            row["stdErr"] = result.std_error[k];
        }
        per_bit.push_back(std::move(row));
    }
    j["perBit"] = std::move(per_bit);
    return j.dump();
}

} // namespace nsbox
