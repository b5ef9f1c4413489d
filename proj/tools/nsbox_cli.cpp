// nsbox command-line interface. Talks to the core exclusively through the
// public C API, so it doubles as a consumer test of the shared library.
//
// Exit codes: 0 success, 2 box validation failure (box subcommand), 64 usage
// or parse errors, 65 data/protocol errors, 74 I/O errors, 70 internal.

#include <nsbox/nsbox.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

constexpr int kExitValidation = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitInternal = 70;
constexpr int kExitIo = 74;

[[noreturn]] void die(int code, const std::string& message) {
    std::cerr << "nsbox: " << message << "\n";
    std::exit(code);
}

int exit_code_for(nsbox_status status) {
    switch (status) {
        case NSBOX_OK: return 0;
        case NSBOX_ERROR_PARSE: return kExitUsage;
        case NSBOX_ERROR_INVALID_ARGUMENT: return kExitData;
        case NSBOX_ERROR_VALIDATION: return kExitData;
        case NSBOX_ERROR_CAP_EXCEEDED: return kExitData;
        case NSBOX_ERROR_UNSUPPORTED: return kExitData;
        case NSBOX_ERROR_IO: return kExitIo;
        case NSBOX_ERROR_INTERNAL: return kExitInternal;
    }
    return kExitInternal;
}

void require_ok(nsbox_status status) {
    if (status != NSBOX_OK) die(exit_code_for(status), nsbox_last_error());
}

struct BoxHandle {
    nsbox_box* ptr = nullptr;
    BoxHandle() = default;
    explicit BoxHandle(nsbox_box* p) : ptr(p) {}
    BoxHandle(BoxHandle&& o) noexcept : ptr(o.ptr) { o.ptr = nullptr; }
    BoxHandle& operator=(BoxHandle&& o) noexcept {
        std::swap(ptr, o.ptr);
        return *this;
    }
    BoxHandle(const BoxHandle&) = delete;
    ~BoxHandle() { nsbox_box_free(ptr); }
};

std::string take_string(char* s) {
    std::string out = s ? s : "";
    nsbox_string_free(s);
    return out;
}

std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) return "nan";
    return std::string(buf, end);
}

std::string iso_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm_utc;
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

json make_manifest(const std::string& command, json parameters, uint64_t seed) {
    json manifest;
    manifest["command"] = command;
    manifest["libraryVersion"] = nsbox_version();
    manifest["parameters"] = std::move(parameters);
    manifest["seed"] = seed;
    manifest["timestamp"] = iso_timestamp();
    return manifest;
}

std::string manifest_csv_header(const json& manifest) {
    std::ostringstream out;
    out << "# command: " << manifest["command"].get<std::string>() << "\n";
    out << "# libraryVersion: " << manifest["libraryVersion"].get<std::string>() << "\n";
    out << "# parameters: " << manifest["parameters"].dump() << "\n";
    out << "# seed: " << manifest["seed"].get<uint64_t>() << "\n";
    out << "# timestamp: " << manifest["timestamp"].get<std::string>() << "\n";
    return out.str();
}

/// Writes through a temp file and renames, so failures leave no partial file.
void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) die(kExitIo, "cannot open " + tmp + " for writing");
        out << content;
        if (!out.flush()) {
            std::remove(tmp.c_str());
            die(kExitIo, "short write to " + tmp);
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        die(kExitIo, "cannot rename " + tmp + " to " + path);
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) die(kExitIo, "cannot read " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::vector<int32_t> parse_bits(const std::string& bits, const char* what) {
    std::vector<int32_t> out;
    for (char c : bits) {
        if (c != '0' && c != '1') die(kExitUsage, std::string(what) + " must be a 0/1 string");
        out.push_back(c - '0');
    }
    if (out.empty()) die(kExitUsage, std::string(what) + " must be nonempty");
    return out;
}

/// Compact single-token box spec: pr | noise | iso(E) | det(fbits,gbits) | @path.
BoxHandle parse_compact_box(const std::string& spec) {
    nsbox_box* box = nullptr;
    if (spec == "pr") {
        require_ok(nsbox_box_pr(&box));
    } else if (spec == "noise") {
        require_ok(nsbox_box_white_noise(&box));
    } else if (spec.rfind("iso(", 0) == 0 && spec.back() == ')') {
        const std::string bias = spec.substr(4, spec.size() - 5);
        require_ok(nsbox_box_isotropic(bias.c_str(), &box));
    } else if (spec.rfind("det(", 0) == 0 && spec.back() == ')') {
        const std::string body = spec.substr(4, spec.size() - 5);
        const std::size_t comma = body.find(',');
        if (comma == std::string::npos) die(kExitUsage, "det spec needs det(fbits,gbits)");
        const auto f = parse_bits(body.substr(0, comma), "f");
        const auto g = parse_bits(body.substr(comma + 1), "g");
        const int32_t scenario[4] = {static_cast<int32_t>(f.size()), static_cast<int32_t>(g.size()),
                                     2, 2};
        require_ok(nsbox_box_local_deterministic(scenario, f.data(), g.data(), &box));
    } else if (!spec.empty() && spec[0] == '@') {
        const std::string text = read_file(spec.substr(1));
        require_ok(nsbox_box_from_json(text.c_str(), &box));
    } else {
        die(kExitUsage, "unknown box spec: " + spec +
                            " (expected pr | noise | iso(E) | det(fbits,gbits) | @path)");
    }
    return BoxHandle(box);
}

/// Space-separated grammar of the `box` subcommand, including mixtures of
/// compact parts with rational weights.
BoxHandle parse_box_command_spec(const std::vector<std::string>& tokens) {
    if (tokens.empty() || tokens[0].empty()) die(kExitUsage, "missing box spec");
    const std::string& head = tokens[0];
    if (head == "pr" || head == "noise" || head[0] == '@') {
        if (tokens.size() != 1) die(kExitUsage, "unexpected tokens after " + head);
        return parse_compact_box(head);
    }
    if (head == "iso") {
        if (tokens.size() != 2) die(kExitUsage, "usage: box iso <bias p/q>");
        return parse_compact_box("iso(" + tokens[1] + ")");
    }
    if (head == "det") {
        if (tokens.size() != 3) die(kExitUsage, "usage: box det <fbits> <gbits>");
        return parse_compact_box("det(" + tokens[1] + "," + tokens[2] + ")");
    }
    if (head == "mix") {
        if (tokens.size() < 2) die(kExitUsage, "usage: box mix <part:weight> ...");
        std::vector<BoxHandle> parts;
        std::vector<std::string> weights;
        for (std::size_t i = 1; i < tokens.size(); ++i) {
            const std::size_t colon = tokens[i].rfind(':');
            if (colon == std::string::npos)
                die(kExitUsage, "mix parts look like pr:17/20, got " + tokens[i]);
            parts.push_back(parse_compact_box(tokens[i].substr(0, colon)));
            weights.push_back(tokens[i].substr(colon + 1));
        }
        std::vector<const nsbox_box*> raw;
        std::vector<const char*> raw_weights;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            raw.push_back(parts[i].ptr);
            raw_weights.push_back(weights[i].c_str());
        }
        nsbox_box* mixed = nullptr;
        require_ok(nsbox_box_mix(raw.data(), raw_weights.data(), raw.size(), &mixed));
        return BoxHandle(mixed);
    }
    // Single compact token fallback, e.g. `box iso(1/2)`.
    if (tokens.size() == 1) return parse_compact_box(head);
    die(kExitUsage, "unknown box spec: " + head);
}

json validation_to_json(const nsbox_validation& v) {
    json out;
    out["nonnegative"] = v.nonnegative != 0;
    out["normalized"] = v.normalized != 0;
    out["noSignaling"] = v.no_signaling != 0;
    if (!v.nonnegative) out["firstNegative"] = v.first_negative;
    if (!v.normalized) out["firstUnnormalized"] = v.first_unnormalized;
    if (!v.no_signaling) out["firstSignaling"] = v.first_signaling;
    out["allPass"] = v.nonnegative && v.normalized && v.no_signaling;
    return out;
}

const char* tier_string(nsbox_tier tier) {
    switch (tier) {
        case NSBOX_TIER_CLASSICAL: return "classical";
        case NSBOX_TIER_QUANTUM_COMPATIBLE: return "quantum-compatible";
        case NSBOX_TIER_SUPERQUANTUM: return "superquantum";
    }
    return "unknown";
}

// ---- subcommands ----------------------------------------------------------

int cmd_box(const std::vector<std::string>& spec, const std::string& out_path, uint64_t seed) {
    BoxHandle box = parse_box_command_spec(spec);

    nsbox_validation report;
    require_ok(nsbox_box_validate(box.ptr, &report));
    const bool valid = report.nonnegative && report.normalized && report.no_signaling;

    json doc;
    std::string spec_joined;
    for (const auto& token : spec) spec_joined += (spec_joined.empty() ? "" : " ") + token;
    doc["manifest"] = make_manifest("box", json{{"spec", spec_joined}}, seed);
    doc["box"] = json::parse(take_string([&] {
        char* s = nullptr;
        require_ok(nsbox_box_to_json(box.ptr, &s));
        return s;
    }()));
    doc["validation"] = validation_to_json(report);

    int32_t scenario[4];
    require_ok(nsbox_box_scenario(box.ptr, scenario));
    const bool chsh_scenario =
        scenario[0] == 2 && scenario[1] == 2 && scenario[2] == 2 && scenario[3] == 2;
    if (chsh_scenario && valid) {
        char* value = nullptr;
        nsbox_tier tier;
        require_ok(nsbox_box_classify(box.ptr, &value, &tier));
        doc["chsh"] = take_string(value);
        doc["tier"] = tier_string(tier);
    }

    write_output(out_path, doc.dump(2) + "\n");
    return valid ? 0 : kExitValidation;
}

int cmd_membership(const std::string& box_spec, const std::string& out_path, uint64_t seed) {
    BoxHandle box = parse_compact_box(box_spec);

    nsbox_cert* cert = nullptr;
    require_ok(nsbox_classical_membership(box.ptr, &cert));
    std::unique_ptr<nsbox_cert, decltype(&nsbox_cert_free)> guard(cert, nsbox_cert_free);

    json doc;
    doc["manifest"] = make_manifest("membership", json{{"box", box_spec}}, seed);
    char* value = nullptr;
    if (nsbox_box_chsh_value(box.ptr, &value) == NSBOX_OK) doc["chsh"] = take_string(value);
    doc["feasible"] = nsbox_cert_feasible(cert) != 0;
    char* cert_json = nullptr;
    require_ok(nsbox_cert_to_json(cert, &cert_json));
    doc["certificate"] = json::parse(take_string(cert_json));

    write_output(out_path, doc.dump(2) + "\n");
    return 0;
}

int cmd_ot(const std::string& box_spec, uint64_t trials, uint64_t seed, const std::string& format,
           const std::string& out_path) {
    if (trials < 1) die(kExitUsage, "ot needs --trials >= 1");
    BoxHandle box = parse_compact_box(box_spec);

    uint64_t successes[8];
    require_ok(nsbox_ot_exhaustive(box.ptr, trials, seed, successes));

    const json manifest = make_manifest(
        "ot", json{{"box", box_spec}, {"trials", trials}, {"format", format}}, seed);
    if (format == "csv") {
        std::ostringstream out;
        out << manifest_csv_header(manifest);
        out << "x0,x1,k,successes,trials\n";
        for (int combo = 0; combo < 8; ++combo)
            out << (combo >> 2) << "," << ((combo >> 1) & 1) << "," << (combo & 1) << ","
                << successes[combo] << "," << trials << "\n";
        write_output(out_path, out.str());
    } else {
        json doc;
        doc["manifest"] = manifest;
        json rows = json::array();
        for (int combo = 0; combo < 8; ++combo)
            rows.push_back(json{{"x0", combo >> 2},
                                {"x1", (combo >> 1) & 1},
                                {"k", combo & 1},
                                {"successes", successes[combo]},
                                {"trials", trials}});
        doc["perInput"] = std::move(rows);
        write_output(out_path, doc.dump(2) + "\n");
    }
    return 0;
}

int cmd_rac(int depth, const std::string& bias, const std::string& box_spec, uint64_t trials,
            uint64_t seed, int jobs, const std::string& format, const std::string& out_path,
            const std::string& transcript_path) {
    if (bias.empty() == box_spec.empty())
        die(kExitUsage, "rac needs exactly one of -E <bias> or --box <spec>");
    BoxHandle box = bias.empty() ? parse_compact_box(box_spec)
                                 : parse_compact_box("iso(" + bias + ")");

    const nsbox_box* boxes[1] = {box.ptr};
    nsbox_rac_result* result = nullptr;
    char* transcript = nullptr;
    require_ok(nsbox_rac_run(boxes, 1, depth, trials, seed, jobs,
                             transcript_path.empty() ? nullptr : &transcript, &result));
    std::unique_ptr<nsbox_rac_result, decltype(&nsbox_rac_result_free)> guard(
        result, nsbox_rac_result_free);
    if (!transcript_path.empty()) write_output(transcript_path, take_string(transcript));

    json parameters{{"n", depth}, {"trials", trials}, {"format", format}};
    if (!bias.empty()) parameters["E"] = bias;
    if (!box_spec.empty()) parameters["box"] = box_spec;
    if (!transcript_path.empty()) parameters["transcript"] = transcript_path;
    const json manifest = make_manifest("rac", parameters, seed);

    char* result_json = nullptr;
    require_ok(nsbox_rac_result_to_json(result, &result_json));
    const json payload = json::parse(take_string(result_json));

    if (format == "csv") {
        std::ostringstream out;
        out << manifest_csv_header(manifest);
        out << "# icSum: " << format_double(payload["icSum"].get<double>()) << "\n";
        out << "# violated: " << (payload["violated"].get<bool>() ? "true" : "false") << "\n";
        out << "k,exact,bias,successes,trials,stdErr\n";
        for (const auto& row : payload["perBit"]) {
            out << row["k"].get<uint64_t>() << ",";
            out << (row.contains("exact") ? row["exact"].get<std::string>() : "") << ",";
            out << (row.contains("bias") ? row["bias"].get<std::string>() : "") << ",";
            if (row.contains("successes")) {
                out << row["successes"].get<uint64_t>() << "," << row["trials"].get<uint64_t>()
                    << "," << format_double(row["stdErr"].get<double>());
            } else {
                out << ",,";
            }
            out << "\n";
        }
        write_output(out_path, out.str());
    } else {
        json doc = payload;
        doc["manifest"] = manifest;
        write_output(out_path, doc.dump(2) + "\n");
    }
    return 0;
}

int cmd_sweep(int n_min, int n_max, double e_min, double e_max, double e_step, uint64_t seed,
              const std::string& out_path) {
    if (n_min < 1 || n_max < n_min) die(kExitUsage, "empty depth range");
    if (e_step <= 0 || e_max < e_min) die(kExitUsage, "empty bias range");

    const json manifest = make_manifest("sweep",
                                        json{{"nMin", n_min},
                                             {"nMax", n_max},
                                             {"eMin", e_min},
                                             {"eMax", e_max},
                                             {"eStep", e_step}},
                                        seed);
    std::ostringstream out;
    out << manifest_csv_header(manifest);
    out << "n,E,icSum,logSum2,violated\n";
    for (int n = n_min; n <= n_max; ++n) {
        for (int i = 0;; ++i) {
            const double e = e_min + i * e_step;
            if (e > e_max + 1e-12) break;
            nsbox_ic_evaluation eval;
            require_ok(nsbox_ic_sum(n, e, &eval));
            out << n << "," << format_double(e) << "," << format_double(eval.sum) << ","
                << format_double(eval.log_sum2) << "," << (eval.violated ? "true" : "false")
                << "\n";
        }
    }
    write_output(out_path, out.str());
    return 0;
}

int cmd_threshold(int64_t n_max, uint64_t seed, const std::string& out_path) {
    double threshold = 0;
    require_ok(nsbox_tsirelson_threshold(n_max, &threshold));
    const double limit = 1.0 / std::sqrt(2.0);

    json doc;
    doc["manifest"] = make_manifest("threshold", json{{"nMax", n_max}}, seed);
    doc["nMax"] = n_max;
    doc["threshold"] = threshold;
    doc["gapToTsirelson"] = threshold - limit;
    write_output(out_path, doc.dump(2) + "\n");
    std::cerr << "threshold(nMax=" << n_max << ") = " << format_double(threshold)
              << ", gap to 1/sqrt(2) = " << format_double(threshold - limit) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"nsbox - no-signaling boxes, PR-box protocols, and the information bound"};
    app.require_subcommand(1);

    // box
    auto* box_cmd = app.add_subcommand("box", "construct and validate a box, write JSON");
    std::vector<std::string> box_spec;
    std::string box_out;
    uint64_t box_seed = 0;
    box_cmd->add_option("spec", box_spec, "pr | noise | iso E | det fbits gbits | mix p:w ... | @path")
        ->required();
    box_cmd->add_option("--out", box_out, "output path (default stdout)");
    box_cmd->add_option("--seed", box_seed, "recorded in the manifest");

    // membership
    auto* mem_cmd = app.add_subcommand("membership", "exact classical-polytope membership");
    std::string mem_box, mem_out;
    uint64_t mem_seed = 0;
    mem_cmd->add_option("--box", mem_box, "pr | noise | iso(E) | det(f,g) | @path")->required();
    mem_cmd->add_option("--out", mem_out, "output path (default stdout)");
    mem_cmd->add_option("--seed", mem_seed, "recorded in the manifest");

    // ot
    auto* ot_cmd = app.add_subcommand("ot", "oblivious transfer rounds over a box");
    std::string ot_box = "pr", ot_format = "json", ot_out;
    uint64_t ot_trials = 1000, ot_seed = 0;
    ot_cmd->add_option("--box", ot_box, "box spec (default pr)");
    ot_cmd->add_option("--trials", ot_trials, "rounds per input combination");
    ot_cmd->add_option("--seed", ot_seed, "rng seed");
    ot_cmd->add_option("--format", ot_format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    ot_cmd->add_option("--out", ot_out, "output path (default stdout)");

    // rac
    auto* rac_cmd = app.add_subcommand("rac", "concatenated random access code");
    int rac_n = 1, rac_jobs = 1;
    std::string rac_bias, rac_box, rac_format = "json", rac_out, rac_transcript;
    uint64_t rac_trials = 0, rac_seed = 0;
    rac_cmd->add_option("-n,--depth", rac_n, "concatenation depth (2^n bits)")->required();
    rac_cmd->add_option("-E,--bias", rac_bias, "isotropic bias as a rational p/q");
    rac_cmd->add_option("--box", rac_box, "box spec used for every pair");
    rac_cmd->add_option("--trials", rac_trials, "Monte Carlo trials (0 = exact only)");
    rac_cmd->add_option("--seed", rac_seed, "rng seed");
    rac_cmd->add_option("--jobs", rac_jobs, "worker threads (does not change results)");
    rac_cmd->add_option("--format", rac_format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    rac_cmd->add_option("--out", rac_out, "output path (default stdout)");
    rac_cmd->add_option("--transcript", rac_transcript, "write one audit line per trial");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "information-sum landscape as CSV");
    int sweep_nmin = 1, sweep_nmax = 1;
    double sweep_emin = 0, sweep_emax = 0, sweep_estep = 0.01;
    std::string sweep_out;
    uint64_t sweep_seed = 0;
    sweep_cmd->add_option("--n-min", sweep_nmin, "first depth")->required();
    sweep_cmd->add_option("--n-max", sweep_nmax, "last depth")->required();
    sweep_cmd->add_option("--e-min", sweep_emin, "first bias")->required();
    sweep_cmd->add_option("--e-max", sweep_emax, "last bias")->required();
    sweep_cmd->add_option("--e-step", sweep_estep, "bias step (default 0.01)");
    sweep_cmd->add_option("--seed", sweep_seed, "recorded in the manifest");
    sweep_cmd->add_option("--out", sweep_out, "output path (default stdout)");

    // threshold
    auto* thr_cmd = app.add_subcommand("threshold", "recover the violation threshold bias");
    int64_t thr_nmax = 1;
    std::string thr_out;
    uint64_t thr_seed = 0;
    thr_cmd->add_option("--n-max", thr_nmax, "largest concatenation depth considered")->required();
    thr_cmd->add_option("--seed", thr_seed, "recorded in the manifest");
    thr_cmd->add_option("--out", thr_out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kExitUsage;
    }

    if (box_cmd->parsed()) return cmd_box(box_spec, box_out, box_seed);
    if (mem_cmd->parsed()) return cmd_membership(mem_box, mem_out, mem_seed);
    if (ot_cmd->parsed()) return cmd_ot(ot_box, ot_trials, ot_seed, ot_format, ot_out);
    if (rac_cmd->parsed())
        return cmd_rac(rac_n, rac_bias, rac_box, rac_trials, rac_seed, rac_jobs, rac_format,
                       rac_out, rac_transcript);
    if (sweep_cmd->parsed())
        return cmd_sweep(sweep_nmin, sweep_nmax, sweep_emin, sweep_emax, sweep_estep, sweep_seed,
                         sweep_out);
    if (thr_cmd->parsed()) return cmd_threshold(thr_nmax, thr_seed, thr_out);
    return kExitUsage;
}
