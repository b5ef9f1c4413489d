#include "geometry.hpp"

#include "error.hpp"
#include "simplex.hpp"

#include <json.hpp>

namespace nsbox {

namespace {

// na^nx * nb^ny with overflow detection.
uint64_t checked_strategy_count(const Scenario& s) {
    unsigned __int128 count = 1;
    for (int i = 0; i < s.nx; ++i) count *= static_cast<unsigned>(s.na);
    for (int i = 0; i < s.ny; ++i) {
        count *= static_cast<unsigned>(s.nb);
        if (count > static_cast<unsigned __int128>(UINT64_MAX))
            raise(ErrorCode::cap_exceeded, "local vertex count exceeds 2^64");
    }
    if (count > static_cast<unsigned __int128>(UINT64_MAX))
        raise(ErrorCode::cap_exceeded, "local vertex count exceeds 2^64");
    return static_cast<uint64_t>(count);
}

std::vector<int> digits_of(uint64_t index, int base, int length) {
    std::vector<int> out(length);
    for (int i = length; i-- > 0;) {
        out[i] = static_cast<int>(index % static_cast<uint64_t>(base));
        index /= static_cast<uint64_t>(base);
    }
    return out;
}

// One linear functional over table entries plus its value on a box.
struct ConstraintRow {
    std::vector<std::size_t> entries; // indices with coefficient 1
};

Rational apply_row(const ConstraintRow& row, const BoxPoint& box) {
    Rational sum;
    for (std::size_t idx : row.entries) sum += box.table()[idx];
    return sum;
}

// Minimal determining set for normalized no-signaling boxes: Alice marginals
// P(a|x) for a < na-1 (read at y = 0), Bob marginals P(b|y) for b < nb-1
// (read at x = 0), and joints P(a,b|x,y) for a < na-1, b < nb-1. Equality on
// these rows plus total weight 1 pins the full table for no-signaling points.
std::vector<ConstraintRow> membership_rows(const Scenario& s) {
    std::vector<ConstraintRow> rows;
    for (int x = 0; x < s.nx; ++x)
        for (int a = 0; a < s.na - 1; ++a) {
            ConstraintRow row;
            for (int b = 0; b < s.nb; ++b) row.entries.push_back(s.index(x, 0, a, b));
            rows.push_back(std::move(row));
        }
    for (int y = 0; y < s.ny; ++y)
        for (int b = 0; b < s.nb - 1; ++b) {
            ConstraintRow row;
            for (int a = 0; a < s.na; ++a) row.entries.push_back(s.index(0, y, a, b));
            rows.push_back(std::move(row));
        }
    for (int x = 0; x < s.nx; ++x)
        for (int y = 0; y < s.ny; ++y)
            for (int a = 0; a < s.na - 1; ++a)
                for (int b = 0; b < s.nb - 1; ++b)
                    rows.push_back(ConstraintRow{{s.index(x, y, a, b)}});
    return rows;
}

} // namespace

uint64_t local_vertex_count(const Scenario& scenario) {
    if (scenario.nx < 1 || scenario.ny < 1 || scenario.na < 1 || scenario.nb < 1)
        raise(ErrorCode::invalid_argument, "scenario alphabet sizes must be >= 1");
    return checked_strategy_count(scenario);
}

BoxPoint local_vertex(const Scenario& scenario, uint64_t index) {
    const uint64_t count = local_vertex_count(scenario);
    if (index >= count) raise(ErrorCode::invalid_argument, "vertex index out of range");
    uint64_t g_count = 1;
    for (int i = 0; i < scenario.ny; ++i) g_count *= static_cast<uint64_t>(scenario.nb);
    std::vector<int> f = digits_of(index / g_count, scenario.na, scenario.nx);
    std::vector<int> g = digits_of(index % g_count, scenario.nb, scenario.ny);
    return make_local_deterministic(f, g, scenario);
}

std::vector<BoxPoint> enumerate_local_vertices(const Scenario& scenario, uint64_t cap) {
    const uint64_t count = local_vertex_count(scenario);
    if (count > cap)
        raise(ErrorCode::cap_exceeded,
              "local vertex count " + std::to_string(count) + " exceeds cap " + std::to_string(cap));
    std::vector<BoxPoint> vertices;
    vertices.reserve(count);
    for (uint64_t v = 0; v < count; ++v) vertices.push_back(local_vertex(scenario, v));
    return vertices;
}

NsDimension ns_dimension(const Scenario& s) {
    if (s.nx < 1 || s.ny < 1 || s.na < 1 || s.nb < 1)
        raise(ErrorCode::invalid_argument, "scenario alphabet sizes must be >= 1");
    const int64_t nx = s.nx, ny = s.ny, na = s.na, nb = s.nb;
    NsDimension d;
    d.full = nx * ny * (na * nb - 1);
    d.ns = nx * ny * (na - 1) * (nb - 1) + nx * (na - 1) + ny * (nb - 1);
    return d;
}

MembershipCertificate classical_membership(const BoxPoint& box, uint64_t cap) {
    ValidationReport report = validate(box);
    if (!report.all_pass())
        raise(ErrorCode::validation_failed,
              "classical_membership requires a valid no-signaling box");

    const Scenario& s = box.scenario();
    const std::vector<BoxPoint> vertices = enumerate_local_vertices(s, cap);
    const std::vector<ConstraintRow> rows = membership_rows(s);

    // A w = b over the weight simplex: one row per determining functional
    // plus the normalization row (all ones, rhs 1).
    const std::size_t m = rows.size() + 1;
    std::vector<std::vector<Rational>> A(m, std::vector<Rational>(vertices.size()));
    std::vector<Rational> b(m);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t v = 0; v < vertices.size(); ++v) A[i][v] = apply_row(rows[i], vertices[v]);
        b[i] = apply_row(rows[i], box);
    }
    for (std::size_t v = 0; v < vertices.size(); ++v) A[rows.size()][v] = Rational(1);
    b[rows.size()] = Rational(1);

    FeasibilityResult lp = solve_equality_feasibility(A, b);

    MembershipCertificate cert;
    if (lp.feasible) {
        cert.feasible = true;
        for (std::size_t v = 0; v < vertices.size(); ++v)
            if (!lp.solution[v].is_zero()) cert.weights.emplace_back(v, lp.solution[v]);
    } else {
        cert.feasible = false;
        cert.witness.assign(s.table_size(), Rational(0));
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t idx : rows[i].entries) cert.witness[idx] += lp.dual[i];
        cert.witness_constant = lp.dual[rows.size()];
    }
    if (!check_certificate(box, cert, cap))
        raise(ErrorCode::internal, "membership certificate failed its own soundness check");
    return cert;
}

bool check_certificate(const BoxPoint& box, const MembershipCertificate& cert, uint64_t cap) {
    const Scenario& s = box.scenario();
    if (cert.feasible) {
        Rational total;
        std::vector<Rational> combo(s.table_size(), Rational(0));
        for (const auto& [index, weight] : cert.weights) {
            if (weight.sign() < 0) return false;
            BoxPoint vertex = local_vertex(s, index);
            for (std::size_t i = 0; i < combo.size(); ++i) combo[i] += weight * vertex.table()[i];
            total += weight;
        }
        if (total != Rational(1)) return false;
        for (std::size_t i = 0; i < combo.size(); ++i)
            if (combo[i] != box.table()[i]) return false;
        return true;
    }
    if (cert.witness.size() != s.table_size()) return false;
    auto evaluate = [&](const BoxPoint& p) {
        Rational sum = cert.witness_constant;
        for (std::size_t i = 0; i < cert.witness.size(); ++i) sum += cert.witness[i] * p.table()[i];
        return sum;
    };
    const Rational on_box = evaluate(box);
    const uint64_t count = local_vertex_count(s);
    if (count > cap) return false;
    for (uint64_t v = 0; v < count; ++v)
        if (evaluate(local_vertex(s, v)) >= on_box) return false;
    return on_box.sign() > 0;
}

std::string certificate_to_json(const MembershipCertificate& cert) {
    nlohmann::json j;
    if (cert.feasible) {
        j["status"] = "feasible";
        nlohmann::json weights = nlohmann::json::array();
        for (const auto& [index, weight] : cert.weights)
            weights.push_back(nlohmann::json::array({index, weight.str()}));
        j["weights"] = std::move(weights);
    } else {
        j["status"] = "infeasible";
        nlohmann::json witness = nlohmann::json::array();
        for (const Rational& w : cert.witness) witness.push_back(w.str());
        witness.push_back(cert.witness_constant.str());
        j["witness"] = std::move(witness);
    }
    return j.dump();
}

} // namespace nsbox
