#pragma once

#include "rational.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace nsbox {

/// Input/output alphabet sizes of a bipartite box: x in [0,nx), y in [0,ny),
/// a in [0,na), b in [0,nb).
struct Scenario {
    int nx = 2;
    int ny = 2;
    int na = 2;
    int nb = 2;

    bool operator==(const Scenario&) const = default;
    bool is_chsh() const { return nx == 2 && ny == 2 && na == 2 && nb == 2; }
    std::size_t table_size() const;
    std::size_t index(int x, int y, int a, int b) const;
    static Scenario chsh() { return Scenario{}; }
};

/// A bipartite probability point P(a,b|x,y) in exact rational arithmetic,
/// stored dense row-major over (x, y, a, b). Construction checks only the
/// table shape; use validate() for non-negativity, normalization and
/// no-signaling (deliberately malformed tables are representable so that
/// validation reports can be exercised).
class BoxPoint {
public:
    BoxPoint(Scenario scenario, std::vector<Rational> table);

    const Scenario& scenario() const { return scenario_; }
    const std::vector<Rational>& table() const { return table_; }
    const Rational& prob(int x, int y, int a, int b) const {
        return table_[scenario_.index(x, y, a, b)];
    }

    /// P(a|x,y) = sum_b P(a,b|x,y); for a no-signaling box this does not
    /// depend on y.
    Rational marginal_alice(int a, int x, int y) const;
    Rational marginal_bob(int b, int x, int y) const;

private:
    Scenario scenario_;
    std::vector<Rational> table_;
};

struct ValidationReport {
    bool nonnegative = true;
    long first_negative = -1; // table index (x,y,a,b row-major)
    bool normalized = true;
    long first_unnormalized = -1; // flat (x,y) index
    bool no_signaling = true;
    long first_signaling = -1; // flat check index, Alice checks then Bob checks

    bool all_pass() const { return nonnegative && normalized && no_signaling; }
};

/// Reports all three checks independently instead of failing fast.
/// Signaling check indices: Alice marginals first, flat over (x, a, y) with
/// y the fastest axis; Bob checks follow with offset nx*na*ny, flat over
/// (y, b, x).
ValidationReport validate(const BoxPoint& box);

enum class ChshTier { classical, quantum_compatible, superquantum };

const char* tier_name(ChshTier tier);

struct ChshClassification {
    Rational value;
    ChshTier tier;
};

BoxPoint make_pr_box();
BoxPoint make_white_noise();

/// P(a,b|x,y) = (1 + (-1)^(a xor b xor xy) * bias) / 4; requires |bias| <= 1.
BoxPoint make_isotropic(const Rational& bias);

/// Deterministic product box a = f(x), b = g(y).
BoxPoint make_local_deterministic(const std::vector<int>& f, const std::vector<int>& g,
                                  const Scenario& scenario);

/// Entrywise convex combination; weights must be nonnegative and sum to 1
/// exactly, and all points must share one scenario.
BoxPoint mix(const std::vector<BoxPoint>& points, const std::vector<Rational>& weights);

/// CHSH game value (1/4) sum_{x,y} P(a xor b = xy | x,y); requires the
/// (2,2,2,2) scenario.
Rational chsh_value(const BoxPoint& box);

/// Tier boundaries are inclusive downward: value <= 3/4 is classical, and the
/// irrational Tsirelson point (2+sqrt(2))/4 is compared exactly through the
/// equivalent predicate (4v-2)^2 <= 2. Requires a no-signaling (2,2,2,2) box.
ChshClassification classify_chsh(const BoxPoint& box);

/// JSON exchange format: {"scenario":[nx,ny,na,nb],"table":["p/q",...]}.
std::string box_to_json(const BoxPoint& box);
BoxPoint box_from_json(std::string_view text);

} // namespace nsbox
