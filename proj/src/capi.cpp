#include "nsbox/nsbox.h"

#include "box.hpp"
#include "error.hpp"
#include "geometry.hpp"
#include "infotheory.hpp"
#include "jointdist.hpp"
#include "protocols.hpp"
#include "rational.hpp"
#include "version.hpp"

#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

using namespace nsbox;

struct nsbox_box {
    BoxPoint value;
};
struct nsbox_cert {
    MembershipCertificate value;
};
struct nsbox_rac_result {
    RacResult value;
};
struct nsbox_dist {
    JointDistribution value;
};

namespace {

thread_local std::string g_last_error;

nsbox_status status_of(ErrorCode code) {
    switch (code) {
        case ErrorCode::invalid_argument: return NSBOX_ERROR_INVALID_ARGUMENT;
        case ErrorCode::parse_error: return NSBOX_ERROR_PARSE;
        case ErrorCode::validation_failed: return NSBOX_ERROR_VALIDATION;
        case ErrorCode::cap_exceeded: return NSBOX_ERROR_CAP_EXCEEDED;
        case ErrorCode::unsupported: return NSBOX_ERROR_UNSUPPORTED;
        case ErrorCode::io_error: return NSBOX_ERROR_IO;
        case ErrorCode::internal: return NSBOX_ERROR_INTERNAL;
    }
    return NSBOX_ERROR_INTERNAL;
}

nsbox_status fail(nsbox_status status, const char* message) {
    g_last_error = message;
    return status;
}

/* Runs the body, translating exceptions to statuses. */
template <typename Fn>
nsbox_status guarded(Fn&& fn) {
    try {
        fn();
        return NSBOX_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return status_of(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return NSBOX_ERROR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return NSBOX_ERROR_INTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

Scenario scenario_from(const int32_t raw[4]) {
    if (!raw) raise(ErrorCode::invalid_argument, "null scenario");
    return Scenario{raw[0], raw[1], raw[2], raw[3]};
}

const BoxPoint& unwrap(const nsbox_box* box) {
    if (!box) raise(ErrorCode::invalid_argument, "null box handle");
    return box->value;
}

std::vector<std::string> name_list(const char* const* names, size_t count, const char* what) {
    std::vector<std::string> out;
    out.reserve(count);
    for (size_t i = 0; i < count; ++i) {
        if (!names || !names[i]) raise(ErrorCode::invalid_argument, std::string("null ") + what);
        out.emplace_back(names[i]);
    }
    return out;
}

} // namespace

extern "C" {

const char* nsbox_version(void) { return NSBOX_VERSION; }

const char* nsbox_status_name(nsbox_status status) {
    switch (status) {
        case NSBOX_OK: return "ok";
        case NSBOX_ERROR_INVALID_ARGUMENT: return "invalid argument";
        case NSBOX_ERROR_PARSE: return "parse error";
        case NSBOX_ERROR_VALIDATION: return "validation failed";
        case NSBOX_ERROR_CAP_EXCEEDED: return "cap exceeded";
        case NSBOX_ERROR_UNSUPPORTED: return "unsupported";
        case NSBOX_ERROR_IO: return "io error";
        case NSBOX_ERROR_INTERNAL: return "internal error";
    }
    return "unknown";
}

const char* nsbox_last_error(void) { return g_last_error.c_str(); }

void nsbox_string_free(char* s) { std::free(s); }
void nsbox_box_free(nsbox_box* box) { delete box; }
void nsbox_cert_free(nsbox_cert* cert) { delete cert; }
void nsbox_rac_result_free(nsbox_rac_result* result) { delete result; }
void nsbox_dist_free(nsbox_dist* dist) { delete dist; }

/* ---- boxes ------------------------------------------------------------- */

nsbox_status nsbox_box_pr(nsbox_box** out) {
    if (!out) return fail(NSBOX_ERROR_INVALID_ARGUMENT, "null output pointer");
    return guarded([&] { *out = new nsbox_box{make_pr_box()}; });
}

nsbox_status nsbox_box_white_noise(nsbox_box** out) {
    if (!out) return fail(NSBOX_ERROR_INVALID_ARGUMENT, "null output pointer");
    return guarded([&] { *out = new nsbox_box{make_white_noise()}; });
}

nsbox_status nsbox_box_isotropic(const char* bias, nsbox_box** out) {
    if (!out || !bias) return fail(NSBOX_ERROR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { *out = new nsbox_box{make_isotropic(Rational::parse(bias))}; });
}

nsbox_status nsbox_box_local_deterministic(const int32_t scenario[4], const int32_t* f,
                                           const int32_t* g, nsbox_box** out) {
    if (!out || !f || !g) return fail(NSBOX_ERROR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        const Scenario s = scenario_from(scenario);
        if (s.nx < 1 || s.ny < 1) raise(ErrorCode::invalid_argument, "bad scenario");
        std::vector<int> fv(f, f + s.nx), gv(g, g + s.ny);
        *out = new nsbox_box{make_local_deterministic(fv, gv, s)};
    });
}

nsbox_status nsbox_box_mix(const nsbox_box* const* boxes, const char* const* weights, size_t count,
                           nsbox_box** out) {
    if (!out || !boxes || !weights) return fail(NSBOX_ERROR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        std::vector<BoxPoint> points;
        std::vector<Rational> w;
        for (size_t i = 0; i < count; ++i) {
            points.push_back(unwrap(boxes[i]));
            if (!weights[i]) raise(ErrorCode::invalid_argument, "null weight string");
            w.push_back(Rational::parse(weights[i]));
        }
        *out = new nsbox_box{mix(points, w)};
    });
}

nsbox_status nsbox_box_from_json(const char* json, nsbox_box** out) {
    if (!out || !json) return fail(NSBOX_ERROR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { *out = new nsbox_box{box_from_json(json)}; });
}

nsbox_status nsbox_box_to_json(const nsbox_box* box, char** out) {
    if (!out) return fail(NSBOX_ERROR_INVALID_ARGUMENT, "null output pointer");
    return guarded([&] { *out = dup_string(box_to_json(unwrap(box))); });
}

nsbox_status nsbox_box_scenario(const nsbox_box* box, int32_t out[4]) {
    if (!out) return fail(NSBOX_ERROR_INVALID_ARGUMENT, "null output pointer");
    return guarded([&] {
        const Scenario& s = unwrap(box).scenario();
        out[0] = s.nx;
        out[1] = s.ny;
        out[2] = s.na;
        out[3] = s.nb;
    });
}

nsbox_status nsbox_box_entry(const nsbox_box* box, int32_t x, int32_t y, int32_t a, int32_t b,
                             char** out) {
    if (!out) return fail(NSBOX_ERROR_INVALID_ARGUMENT, "null output pointer");
    return guarded([&] {
        const BoxPoint& point = unwrap(box);
        const Scenario& s = point.scenario();
        if (x < 0 || x >= s.nx || y < 0 || y >= s.ny || a < 0 || a >= s.na || b < 0 || b >= s.nb)
            raise(ErrorCode::invalid_argument, "box entry index out of range");
        *out = dup_string(point.prob(x, y, a, b).str());
    });
}

nsbox_status nsbox_box_validate(const nsbox_box* box, nsbox_validation* out) {
    if (!out) return fail(NSBOX_ERROR_INVALID_ARGUMENT, "null output pointer");
    return guarded([&] {
        const ValidationReport report = validate(unwrap(box));
        out->nonnegative = report.nonnegative ? 1 : 0;
        out->normalized = report.normalized ? 1 : 0;
        out->no_signaling = report.no_signaling ? 1 : 0;
        out->first_negative = report.first_negative;
        out->first_unnormalized = report.first_unnormalized;
        out->first_signaling = report.first_signaling;
    });
}

nsbox_status nsbox_box_chsh_value(const nsbox_box* box, char** out) {
    if (!out) return fail(NSBOX_ERROR_INVALID_ARGUMENT, "null output pointer");
    return guarded([&] { *out = dup_string(chsh_value(unwrap(box)).str()); });
}

nsbox_status nsbox_box_classify(const nsbox_box* box, char** value_out, nsbox_tier* tier_out) {
    if (!value_out || !tier_out) return fail(NSBOX_ERROR_INVALID_ARGUMENT, "null output pointer");
    return guarded([&] {
        const ChshClassification c = classify_chsh(unwrap(box));
        *value_out = dup_string(c.value.str());
        *tier_out = static_cast<nsbox_tier>(c.tier);
    });
}

/* ---- geometry ---------------------------------------------------------- */

nsbox_status nsbox_local_vertex_count(const int32_t scenario[4], uint64_t* out) {
    if (!out) return fail(NSBOX_ERROR_INVALID_ARGUMENT, "null output pointer");
    return guarded([&] { *out = local_vertex_count(scenario_from(scenario)); });
}

nsbox_status nsbox_local_vertex(const int32_t scenario[4], uint64_t index, nsbox_box** out) {
    if (!out) return fail(NSBOX_ERROR_INVALID_ARGUMENT, "null output pointer");
    return guarded([&] { *out = new nsbox_box{local_vertex(scenario_from(scenario), index)}; });
}

nsbox_status nsbox_ns_dimension(const int32_t scenario[4], int64_t* full_out, int64_t* ns_out) {
    if (!full_out || !ns_out) return fail(NSBOX_ERROR_INVALID_ARGUMENT, "null output pointer");
    return guarded([&] {
        const NsDimension d = ns_dimension(scenario_from(scenario));
        *full_out = d.full;
        *ns_out = d.ns;
    });
}

nsbox_status nsbox_classical_membership(const nsbox_box* box, nsbox_cert** out) {
    if (!out) return fail(NSBOX_ERROR_INVALID_ARGUMENT, "null output pointer");
    return guarded([&] { *out = new nsbox_cert{classical_membership(unwrap(box))}; });
}

int32_t nsbox_cert_feasible(const nsbox_cert* cert) {
    return cert && cert->value.feasible ? 1 : 0;
}

nsbox_status nsbox_cert_to_json(const nsbox_cert* cert, char** out) {
    if (!out || !cert) return fail(NSBOX_ERROR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { *out = dup_string(certificate_to_json(cert->value)); });
}

/* ---- protocols --------------------------------------------------------- */

nsbox_status nsbox_run_ot(const nsbox_box* box, int32_t x0, int32_t x1, int32_t k, uint64_t seed,
                          uint64_t trial, int32_t* out) {
    if (!out) return fail(NSBOX_ERROR_INVALID_ARGUMENT, "null output pointer");
    return guarded([&] {
        if ((x0 & ~1) || (x1 & ~1) || (k & ~1))
            raise(ErrorCode::invalid_argument, "ot inputs must be bits");
        *out = run_ot(unwrap(box), x0, x1, k, seed, trial);
    });
}

nsbox_status nsbox_ot_exhaustive(const nsbox_box* box, uint64_t trials, uint64_t seed,
                                 uint64_t out_successes[8]) {
    if (!out_successes) return fail(NSBOX_ERROR_INVALID_ARGUMENT, "null output pointer");
    return guarded([&] {
        if (trials < 1) raise(ErrorCode::invalid_argument, "trials must be >= 1");
        const BoxSampler sampler(unwrap(box));
        for (int combo = 0; combo < 8; ++combo) {
            const int x0 = combo >> 2, x1 = (combo >> 1) & 1, k = combo & 1;
            uint64_t ok = 0;
            for (uint64_t t = 0; t < trials; ++t) {
                // Distinct trial coordinate per (combo, t) keeps draws unique.
                const uint64_t trial = static_cast<uint64_t>(combo) * trials + t;
                const OtAliceState alice = ot_alice_encode(sampler, x0, x1, seed, trial);
                const int decoded = ot_bob_decode(sampler, alice, k, seed, trial);
                ok += decoded == (k == 0 ? x0 : x1) ? 1 : 0;
            }
            out_successes[combo] = ok;
        }
    });
}

nsbox_status nsbox_rac_run(const nsbox_box* const* boxes, size_t box_count, int32_t depth,
                           uint64_t trials, uint64_t seed, int32_t jobs, char** transcript_out,
                           nsbox_rac_result** out) {
    if (!out || !boxes) return fail(NSBOX_ERROR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        RacConfig cfg;
        cfg.depth = depth;
        cfg.trials = trials;
        cfg.seed = seed;
        for (size_t i = 0; i < box_count; ++i) cfg.boxes.push_back(unwrap(boxes[i]));
        std::string transcript;
        RacResult result =
            rac_run(cfg, jobs < 1 ? 1 : jobs, transcript_out ? &transcript : nullptr);
        if (transcript_out) *transcript_out = dup_string(transcript);
        *out = new nsbox_rac_result{std::move(result)};
    });
}

uint64_t nsbox_rac_bit_count(const nsbox_rac_result* result) {
    if (!result) return 0;
    return uint64_t{1} << result->value.depth;
}

int32_t nsbox_rac_has_exact(const nsbox_rac_result* result) {
    return result && !result->value.exact_success.empty() ? 1 : 0;
}

nsbox_status nsbox_rac_exact_success(const nsbox_rac_result* result, uint64_t bit, char** out) {
    if (!out || !result) return fail(NSBOX_ERROR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        if (bit >= result->value.exact_success.size())
            raise(ErrorCode::invalid_argument, "bit index out of range or exact data absent");
        *out = dup_string(result->value.exact_success[bit].str());
    });
}

nsbox_status nsbox_rac_empirical(const nsbox_rac_result* result, uint64_t bit,
                                 uint64_t* successes_out, uint64_t* trials_out) {
    if (!result || !successes_out || !trials_out)
        return fail(NSBOX_ERROR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        if (bit >= result->value.successes.size())
            raise(ErrorCode::invalid_argument, "bit index out of range or empirical data absent");
        *successes_out = result->value.successes[bit];
        *trials_out = result->value.trials;
    });
}

double nsbox_rac_ic_sum(const nsbox_rac_result* result) {
    return result ? result->value.ic_sum : 0.0;
}

int32_t nsbox_rac_ic_violated(const nsbox_rac_result* result) {
    return result && result->value.ic_violated ? 1 : 0;
}

nsbox_status nsbox_rac_result_to_json(const nsbox_rac_result* result, char** out) {
    if (!out || !result) return fail(NSBOX_ERROR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { *out = dup_string(rac_result_to_json(result->value)); });
}

/* ---- information theory ------------------------------------------------ */

nsbox_status nsbox_binary_entropy(double p, double* out) {
    if (!out) return fail(NSBOX_ERROR_INVALID_ARGUMENT, "null output pointer");
    return guarded([&] { *out = binary_entropy(p); });
}

nsbox_status nsbox_ic_sum(int64_t depth, double bias, nsbox_ic_evaluation* out) {
    if (!out) return fail(NSBOX_ERROR_INVALID_ARGUMENT, "null output pointer");
    return guarded([&] {
        const IcEvaluation eval = ic_sum(depth, bias);
        out->depth = eval.depth;
        out->bias = eval.bias;
        out->per_term_bits = eval.per_term_bits;
        out->sum = eval.sum;
        out->log_sum2 = eval.log_sum2;
        out->bound = eval.bound;
        out->violated = eval.violated ? 1 : 0;
    });
}

nsbox_status nsbox_tsirelson_threshold(int64_t n_max, double* out) {
    if (!out) return fail(NSBOX_ERROR_INVALID_ARGUMENT, "null output pointer");
    return guarded([&] { *out = tsirelson_threshold(n_max); });
}

nsbox_status nsbox_quadratic_bound(const double* biases, size_t count, double* value_out,
                                   int32_t* satisfied_out) {
    if (!biases || !value_out || !satisfied_out)
        return fail(NSBOX_ERROR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        const QuadraticBound result = quadratic_bound(std::vector<double>(biases, biases + count));
        *value_out = result.value;
        *satisfied_out = result.satisfied ? 1 : 0;
    });
}

/* ---- joint distributions ----------------------------------------------- */

nsbox_status nsbox_dist_from_json(const char* json, nsbox_dist** out) {
    if (!out || !json) return fail(NSBOX_ERROR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { *out = new nsbox_dist{dist_from_json(json)}; });
}

nsbox_status nsbox_dist_to_json(const nsbox_dist* dist, char** out) {
    if (!out || !dist) return fail(NSBOX_ERROR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { *out = dup_string(dist_to_json(dist->value)); });
}

nsbox_status nsbox_dist_entropy(const nsbox_dist* dist, const char* const* vars, size_t var_count,
                                double* out) {
    if (!dist || !out) return fail(NSBOX_ERROR_INVALID_ARGUMENT, "null argument");
    return guarded(
        [&] { *out = dist->value.entropy(name_list(vars, var_count, "variable name")); });
}

nsbox_status nsbox_dist_mutual_information(const nsbox_dist* dist, const char* const* lhs,
                                           size_t lhs_count, const char* const* rhs,
                                           size_t rhs_count, double* out) {
    if (!dist || !out) return fail(NSBOX_ERROR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        *out = dist->value.mutual_information(name_list(lhs, lhs_count, "variable name"),
                                              name_list(rhs, rhs_count, "variable name"));
    });
}

nsbox_status nsbox_dist_apply_channel(const nsbox_dist* dist, const char* target,
                                      const double* kernel, size_t rows, size_t cols,
                                      nsbox_dist** out) {
    if (!dist || !target || !kernel || !out)
        return fail(NSBOX_ERROR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        std::vector<std::vector<double>> k(rows, std::vector<double>(cols));
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j) k[i][j] = kernel[i * cols + j];
        *out = new nsbox_dist{dist->value.apply_local_channel(target, k)};
    });
}

nsbox_status nsbox_ic_proof_chain(const nsbox_dist* dist, const char* const* input_vars,
                                  size_t input_count, const char* const* guess_vars,
                                  size_t guess_count, const char* const* blackbox_vars,
                                  size_t blackbox_count, const char* const* message_vars,
                                  size_t message_count, double message_bits, const double* weights,
                                  char** report_json_out) {
    if (!dist || !report_json_out) return fail(NSBOX_ERROR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        std::vector<double> w;
        if (weights) w.assign(weights, weights + input_count + 1);
        const ProofChainReport report = check_ic_proof_chain(
            dist->value, name_list(input_vars, input_count, "input variable"),
            name_list(guess_vars, guess_count, "guess variable"),
            name_list(blackbox_vars, blackbox_count, "black-box variable"),
            name_list(message_vars, message_count, "message variable"), message_bits, w);
        *report_json_out = dup_string(proof_report_to_json(report));
    });
}

} // extern "C"
