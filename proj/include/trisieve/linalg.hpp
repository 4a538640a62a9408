#ifndef TRISIEVE_LINALG_HPP
#define TRISIEVE_LINALG_HPP

#include <vector>

#include "trisieve/rational.hpp"

namespace trisieve {

// Exact Gaussian elimination over any field type with +,-,*,/ operators and
// an is_zero() free function (found by ADL). Instantiated with Rat and with
// number field elements.

enum class SolveKind { Unique, Inconsistent, Underdetermined };

template <class F>
struct SolveResult {
    SolveKind kind;
    std::vector<F> solution; // meaningful only for Unique
};

template <class F>
SolveResult<F> gauss_solve(std::vector<std::vector<F>> a, std::vector<F> b) {
    const std::size_t rows = a.size();
    if (rows == 0) throw input_error("empty linear system");
    const std::size_t cols = a[0].size();
    for (const auto& r : a)
        if (r.size() != cols) throw input_error("ragged linear system");
    if (b.size() != rows) throw input_error("rhs size mismatch");

    std::vector<std::size_t> pivot_row(cols, rows);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t sel = rows;
        for (std::size_t r = rank; r < rows; ++r)
            if (!is_zero(a[r][col])) {
                sel = r;
                break;
            }
        if (sel == rows) continue;
        std::swap(a[rank], a[sel]);
        std::swap(b[rank], b[sel]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || is_zero(a[r][col])) continue;
            F factor = a[r][col] / a[rank][col];
            for (std::size_t c = col; c < cols; ++c) a[r][c] = a[r][c] - factor * a[rank][c];
            b[r] = b[r] - factor * b[rank];
        }
        pivot_row[col] = rank;
        ++rank;
    }
    for (std::size_t r = rank; r < rows; ++r)
        if (!is_zero(b[r])) return {SolveKind::Inconsistent, {}};
    if (rank < cols) return {SolveKind::Underdetermined, {}};
    std::vector<F> x;
    x.reserve(cols);
    for (std::size_t col = 0; col < cols; ++col) {
        std::size_t r = pivot_row[col];
        x.push_back(b[r] / a[r][col]);
    }
    return {SolveKind::Unique, std::move(x)};
}

} // namespace trisieve

#endif
