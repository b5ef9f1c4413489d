#include "box.hpp"

#include "error.hpp"

#include <json.hpp>

namespace nsbox {

namespace {

void check_scenario(const Scenario& s) {
    if (s.nx < 1 || s.ny < 1 || s.na < 1 || s.nb < 1)
        raise(ErrorCode::invalid_argument, "scenario alphabet sizes must be >= 1");
}

void require_chsh(const BoxPoint& box, const char* what) {
    if (!box.scenario().is_chsh())
        raise(ErrorCode::invalid_argument, std::string(what) + " requires the (2,2,2,2) scenario");
}

} // namespace

std::size_t Scenario::table_size() const {
    return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny) *
           static_cast<std::size_t>(na) * static_cast<std::size_t>(nb);
}

std::size_t Scenario::index(int x, int y, int a, int b) const {
    return ((static_cast<std::size_t>(x) * ny + y) * na + a) * nb + b;
}

BoxPoint::BoxPoint(Scenario scenario, std::vector<Rational> table)
    : scenario_(scenario), table_(std::move(table)) {
    check_scenario(scenario_);
    if (table_.size() != scenario_.table_size())
        raise(ErrorCode::invalid_argument, "box table size does not match scenario");
}

Rational BoxPoint::marginal_alice(int a, int x, int y) const {
    Rational sum;
    for (int b = 0; b < scenario_.nb; ++b) sum += prob(x, y, a, b);
    return sum;
}

Rational BoxPoint::marginal_bob(int b, int x, int y) const {
    Rational sum;
    for (int a = 0; a < scenario_.na; ++a) sum += prob(x, y, a, b);
    return sum;
}

ValidationReport validate(const BoxPoint& box) {
    const Scenario& s = box.scenario();
    ValidationReport report;

    for (std::size_t i = 0; i < box.table().size(); ++i) {
        if (box.table()[i].sign() < 0) {
            report.nonnegative = false;
            report.first_negative = static_cast<long>(i);
            break;
        }
    }

    const Rational one(1);
    for (int x = 0; x < s.nx && report.normalized; ++x) {
        for (int y = 0; y < s.ny; ++y) {
            Rational sum;
            for (int a = 0; a < s.na; ++a)
                for (int b = 0; b < s.nb; ++b) sum += box.prob(x, y, a, b);
            if (sum != one) {
                report.normalized = false;
                report.first_unnormalized = static_cast<long>(x) * s.ny + y;
                break;
            }
        }
    }

    // Alice's marginal must not depend on y, Bob's must not depend on x.
    long check = 0;
    for (int x = 0; x < s.nx && report.no_signaling; ++x) {
        for (int a = 0; a < s.na && report.no_signaling; ++a) {
            Rational ref = box.marginal_alice(a, x, 0);
            for (int y = 0; y < s.ny; ++y, ++check) {
                if (box.marginal_alice(a, x, y) != ref) {
                    report.no_signaling = false;
                    report.first_signaling = check;
                    break;
                }
            }
        }
    }
    if (report.no_signaling) {
        check = static_cast<long>(s.nx) * s.na * s.ny;
        for (int y = 0; y < s.ny && report.no_signaling; ++y) {
            for (int b = 0; b < s.nb && report.no_signaling; ++b) {
                Rational ref = box.marginal_bob(b, 0, y);
                for (int x = 0; x < s.nx; ++x, ++check) {
                    if (box.marginal_bob(b, x, y) != ref) {
                        report.no_signaling = false;
                        report.first_signaling = check;
                        break;
                    }
                }
            }
        }
    }
    return report;
}

const char* tier_name(ChshTier tier) {
    switch (tier) {
        case ChshTier::classical: return "classical";
        case ChshTier::quantum_compatible: return "quantum-compatible";
        case ChshTier::superquantum: return "superquantum";
    }
    return "unknown";
}

BoxPoint make_pr_box() {
    Scenario s = Scenario::chsh();
    std::vector<Rational> table(s.table_size());
    const Rational half(1, 2);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    table[s.index(x, y, a, b)] = ((a ^ b) == (x & y)) ? half : Rational(0);
    return BoxPoint(s, std::move(table));
}

BoxPoint make_white_noise() {
    Scenario s = Scenario::chsh();
    std::vector<Rational> table(s.table_size(), Rational(1, 4));
    return BoxPoint(s, std::move(table));
}

BoxPoint make_isotropic(const Rational& bias) {
    if (bias.abs() > Rational(1))
        raise(ErrorCode::invalid_argument, "isotropic bias must lie in [-1, 1], got " + bias.str());
    Scenario s = Scenario::chsh();
    std::vector<Rational> table(s.table_size());
    const Rational quarter(1, 4);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    bool aligned = (a ^ b) == (x & y);
                    table[s.index(x, y, a, b)] = quarter * (Rational(1) + (aligned ? bias : -bias));
                }
    return BoxPoint(s, std::move(table));
}

BoxPoint make_local_deterministic(const std::vector<int>& f, const std::vector<int>& g,
                                  const Scenario& scenario) {
    check_scenario(scenario);
    if (f.size() != static_cast<std::size_t>(scenario.nx) ||
        g.size() != static_cast<std::size_t>(scenario.ny))
        raise(ErrorCode::invalid_argument, "strategy map length does not match input alphabet");
    for (int v : f)
        if (v < 0 || v >= scenario.na)
            raise(ErrorCode::invalid_argument, "f maps outside Alice's output alphabet");
    for (int v : g)
        if (v < 0 || v >= scenario.nb)
            raise(ErrorCode::invalid_argument, "g maps outside Bob's output alphabet");

    std::vector<Rational> table(scenario.table_size(), Rational(0));
    for (int x = 0; x < scenario.nx; ++x)
        for (int y = 0; y < scenario.ny; ++y)
            table[scenario.index(x, y, f[x], g[y])] = Rational(1);
    return BoxPoint(scenario, std::move(table));
}

BoxPoint mix(const std::vector<BoxPoint>& points, const std::vector<Rational>& weights) {
    if (points.empty() || points.size() != weights.size())
        raise(ErrorCode::invalid_argument, "mix needs matching nonempty points and weights");
    const Scenario& s = points.front().scenario();
    Rational total;
    for (const Rational& w : weights) {
        if (w.sign() < 0) raise(ErrorCode::invalid_argument, "mix weight is negative: " + w.str());
        total += w;
    }
    if (total != Rational(1))
        raise(ErrorCode::invalid_argument, "mix weights sum to " + total.str() + ", expected 1");
    for (const BoxPoint& p : points)
        if (!(p.scenario() == s))
            raise(ErrorCode::invalid_argument, "mix over boxes with different scenarios");

    std::vector<Rational> table(s.table_size(), Rational(0));
    for (std::size_t p = 0; p < points.size(); ++p) {
        if (weights[p].is_zero()) continue;
        for (std::size_t i = 0; i < table.size(); ++i)
            table[i] += weights[p] * points[p].table()[i];
    }
    return BoxPoint(s, std::move(table));
}

Rational chsh_value(const BoxPoint& box) {
    require_chsh(box, "chsh_value");
    Rational sum;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    if ((a ^ b) == (x & y)) sum += box.prob(x, y, a, b);
    return sum * Rational(1, 4);
}

ChshClassification classify_chsh(const BoxPoint& box) {
    require_chsh(box, "classify_chsh");
    ValidationReport report = validate(box);
    if (!report.all_pass())
        raise(ErrorCode::validation_failed, "classify_chsh requires a valid no-signaling box");

    Rational value = chsh_value(box);
    ChshTier tier;
    if (value <= Rational(3, 4)) {
        tier = ChshTier::classical;
    } else {
        // value <= (2+sqrt(2))/4  <=>  (4v-2)^2 <= 2, exact on rationals
        // (4v-2 > 0 holds here since v > 3/4).
        Rational t = Rational(4) * value - Rational(2);
        tier = (t * t <= Rational(2)) ? ChshTier::quantum_compatible : ChshTier::superquantum;
    }
    return ChshClassification{std::move(value), tier};
}

std::string box_to_json(const BoxPoint& box) {
    nlohmann::json j;
    j["scenario"] = {box.scenario().nx, box.scenario().ny, box.scenario().na, box.scenario().nb};
    nlohmann::json table = nlohmann::json::array();
    for (const Rational& p : box.table()) table.push_back(p.str());
    j["table"] = std::move(table);
    return j.dump();
}

BoxPoint box_from_json(std::string_view text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("scenario") || !j.contains("table"))
        raise(ErrorCode::parse_error, "box JSON must be an object with scenario and table");
    const auto& sc = j["scenario"];
    if (!sc.is_array() || sc.size() != 4 || !sc[0].is_number_integer())
        raise(ErrorCode::parse_error, "box scenario must be [nx,ny,na,nb]");
    Scenario s{sc[0].get<int>(), sc[1].get<int>(), sc[2].get<int>(), sc[3].get<int>()};
    check_scenario(s);
    const auto& tab = j["table"];
    if (!tab.is_array() || tab.size() != s.table_size())
        raise(ErrorCode::parse_error, "box table length does not match scenario");
    std::vector<Rational> table;
    table.reserve(tab.size());
    for (const auto& entry : tab) {
        if (!entry.is_string()) raise(ErrorCode::parse_error, "box table entries must be rational strings");
        table.push_back(Rational::parse(entry.get<std::string>()));
    }
    return BoxPoint(s, std::move(table));
}

} // namespace nsbox
