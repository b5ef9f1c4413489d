#pragma once

#include "box.hpp"
#include "rational.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace nsbox {

inline constexpr uint64_t kDefaultVertexCap = 1000000;

/// Number of local-deterministic strategies na^nx * nb^ny.
uint64_t local_vertex_count(const Scenario& scenario);

/// All local-deterministic boxes, each exactly once, in lexicographic (f, g)
/// order with f(0) the most significant digit and g varying fastest.
std::vector<BoxPoint> enumerate_local_vertices(const Scenario& scenario,
                                               uint64_t cap = kDefaultVertexCap);

/// The vertex at a given lexicographic index, without materializing the list.
BoxPoint local_vertex(const Scenario& scenario, uint64_t index);

struct NsDimension {
    int64_t full; // |X||Y|(|A||B|-1)
    int64_t ns;   // |X||Y|(|A|-1)(|B|-1) + |X|(|A|-1) + |Y|(|B|-1)
};
NsDimension ns_dimension(const Scenario& scenario);

/// Exact classical-membership decision. Feasible certificates carry convex
/// weights over local-deterministic vertices that reproduce the queried box
/// entrywise; infeasible certificates carry a separating affine functional
/// F(P) = witness . P(table) + witness_constant with F(box) > 0 >= F(vertex)
/// for every vertex.
struct MembershipCertificate {
    bool feasible = false;
    std::vector<std::pair<uint64_t, Rational>> weights; // nonzero entries only
    std::vector<Rational> witness;                      // one coefficient per table entry
    Rational witness_constant;
};

MembershipCertificate classical_membership(const BoxPoint& box,
                                           uint64_t cap = kDefaultVertexCap);

/// Exact soundness check: reconstructs the box from a feasible certificate,
/// or verifies strict separation for an infeasible one.
bool check_certificate(const BoxPoint& box, const MembershipCertificate& cert,
                       uint64_t cap = kDefaultVertexCap);

/// {"status":"feasible","weights":[[index,"p/q"],...]} or
/// {"status":"infeasible","witness":["p/q",...]} with the affine constant as
/// the last witness element.
std::string certificate_to_json(const MembershipCertificate& cert);

} // namespace nsbox
