#include "simplex.hpp"

#include "error.hpp"

namespace nsbox {

FeasibilityResult solve_equality_feasibility(const std::vector<std::vector<Rational>>& A,
                                             const std::vector<Rational>& b) {
    const std::size_t rows = A.size();
    if (rows == 0 || b.size() != rows)
        raise(ErrorCode::invalid_argument, "feasibility system shape mismatch");
    const std::size_t cols = A[0].size();
    for (const auto& row : A)
        if (row.size() != cols) raise(ErrorCode::invalid_argument, "ragged constraint matrix");

    // Tableau over [original columns | artificial columns | rhs], rows flipped
    // so the rhs is nonnegative. Initial basis = artificials.
    const std::size_t total = cols + rows;
    std::vector<std::vector<Rational>> t(rows, std::vector<Rational>(total + 1));
    for (std::size_t i = 0; i < rows; ++i) {
        const bool flip = b[i].sign() < 0;
        for (std::size_t j = 0; j < cols; ++j) t[i][j] = flip ? -A[i][j] : A[i][j];
        t[i][cols + i] = Rational(1);
        t[i][total] = flip ? -b[i] : b[i];
    }

    std::vector<std::size_t> basis(rows);
    for (std::size_t i = 0; i < rows; ++i) basis[i] = cols + i;

    // Reduced-cost row for min(sum of artificials): z_j = sum_i t[i][j] over
    // all rows (artificial costs are 1), objective value = sum of rhs.
    std::vector<Rational> reduced(total + 1);
    for (std::size_t j = 0; j <= total; ++j) {
        Rational sum;
        for (std::size_t i = 0; i < rows; ++i) sum += t[i][j];
        reduced[j] = std::move(sum);
    }
    // cost(artificial) = 1, cost(original) = 0: c_j - z_j < 0 signals entering.
    auto entering = [&]() -> long {
        for (std::size_t j = 0; j < total; ++j) {
            Rational cj = j < cols ? Rational(0) : Rational(1);
            if (cj < reduced[j]) return static_cast<long>(j); // Bland: first improving index
        }
        return -1;
    };

    while (true) {
        long e = entering();
        if (e < 0) break;
        // Ratio test, Bland tie-break on smallest basis variable.
        long leave = -1;
        Rational best;
        for (std::size_t i = 0; i < rows; ++i) {
            if (t[i][e].sign() <= 0) continue;
            Rational ratio = t[i][total] / t[i][e];
            if (leave < 0 || ratio < best ||
                (ratio == best && basis[i] < basis[static_cast<std::size_t>(leave)])) {
                leave = static_cast<long>(i);
                best = std::move(ratio);
            }
        }
        if (leave < 0)
            raise(ErrorCode::internal, "unbounded phase-1 objective"); // cannot happen: objective >= 0
        const std::size_t r = static_cast<std::size_t>(leave);
        const std::size_t c = static_cast<std::size_t>(e);

        Rational pivot = t[r][c];
        for (std::size_t j = 0; j <= total; ++j) t[r][j] /= pivot;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || t[i][c].is_zero()) continue;
            Rational factor = t[i][c];
            for (std::size_t j = 0; j <= total; ++j) t[i][j] -= factor * t[r][j];
        }
        Rational zfactor = reduced[c] - (c < cols ? Rational(0) : Rational(1));
        if (!zfactor.is_zero())
            for (std::size_t j = 0; j <= total; ++j) reduced[j] -= zfactor * t[r][j];
        basis[r] = c;
    }

    FeasibilityResult result;
    const Rational objective = reduced[total];
    if (objective.is_zero()) {
        result.feasible = true;
        result.solution.assign(cols, Rational(0));
        for (std::size_t i = 0; i < rows; ++i)
            if (basis[i] < cols) result.solution[basis[i]] = t[i][total];
    } else {
        // Farkas dual y = c_B B^{-1}; its components are the z-values of the
        // artificial columns. Undo the row flips so y certifies the original
        // system: yᵀA_j = z_j <= 0 for every original column, yᵀb = objective > 0.
        result.feasible = false;
        result.dual.assign(rows, Rational(0));
        for (std::size_t i = 0; i < rows; ++i) {
            const Rational& y = reduced[cols + i];
            result.dual[i] = (b[i].sign() < 0) ? -y : y;
        }
    }
    return result;
}

} // namespace nsbox
