#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dcurve/diffpoly.hpp"
#include "dcurve/errors.hpp"

namespace dcurve {

/// Differential resultant matrix of two polynomials linear in u.
///
/// For m1 = ord_u f1 and m2 = ord_u f2 the matrix is L x L with
/// L = m1 + m2 + 2. Row k is the coefficient vector of the k-th element of
/// PS = {f1^(m2), ..., f1', f1, f2^(m1), ..., f2', f2} with respect to the
/// columns u^(m1+m2) > ... > u' > u > 1; the final column holds the u-free
/// part. Entries are free of u and its derivatives.
struct ResultantMatrix {
    int m1 = 0, m2 = 0;
    std::vector<std::vector<DiffPoly>> entries;
    // row_source[k] = {which input (1 or 2), derivative order}
    std::vector<std::pair<int, int>> row_source;

    size_t size() const { return entries.size(); }
};

inline ResultantMatrix build_resultant_matrix(const DiffPoly& f1, const DiffPoly& f2) {
    if (!f1.linear_in_u() || !f2.linear_in_u())
        throw domain_error("resultant inputs must be linear in u");
    auto o1 = f1.order_in(Indet::u), o2 = f2.order_in(Indet::u);
    if (!o1 || !o2) throw domain_error("resultant inputs must involve u");
    int m1 = *o1, m2 = *o2;
    int L = m1 + m2 + 2;

    ResultantMatrix M;
    M.m1 = m1;
    M.m2 = m2;
    M.entries.reserve(L);

    auto push_rows = [&](const DiffPoly& f, int which, int count) {
        std::vector<DiffPoly> prolong = {f};
        for (int j = 1; j < count; ++j) prolong.push_back(prolong.back().derive());
        for (int j = count - 1; j >= 0; --j) {
            const DiffPoly& p = prolong[j];
            std::vector<DiffPoly> row(L);
            DiffPoly constant = p;
            for (int col = 0; col < L - 1; ++col) {
                int ord = m1 + m2 - col;
                DiffPoly c = p.coeff_of(DerivVar{Indet::u, ord}, 1);
                row[col] = c;
                constant = constant - c * DiffPoly::var(Indet::u, ord);
            }
            row[L - 1] = constant;
            M.entries.push_back(std::move(row));
            M.row_source.emplace_back(which, j);
        }
    };
    push_rows(f1, 1, m2 + 1);
    push_rows(f2, 2, m1 + 1);
    return M;
}

/// Exact determinant by fraction-free (Bareiss) elimination with exact
/// division. Zero pivots are handled by row swaps with sign tracking, so the
/// value, including its sign, equals the cofactor expansion of the matrix as
/// labeled.
inline DiffPoly det_fraction_free(std::vector<std::vector<DiffPoly>> m) {
    size_t n = m.size();
    if (n == 0) return DiffPoly(1);
    for (const auto& row : m)
        if (row.size() != n) throw domain_error("determinant of a non-square matrix");
    bool flip = false;
    DiffPoly prev(1);
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            size_t pivot = k + 1;
            while (pivot < n && m[pivot][k].is_zero()) ++pivot;
            if (pivot == n) return DiffPoly(0);
            std::swap(m[pivot], m[k]);
            flip = !flip;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j)
                m[i][j] = dp_exact_div(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
            m[i][k] = DiffPoly(0);
        }
        prev = m[k][k];
    }
    return flip ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

inline DiffPoly det_fraction_free(const ResultantMatrix& M) {
    return det_fraction_free(M.entries);
}

/// Differential resultant of two polynomials linear in u: the determinant of
/// the differential resultant matrix. May be zero.
inline DiffPoly diff_resultant(const DiffPoly& f1, const DiffPoly& f2) {
    return det_fraction_free(build_resultant_matrix(f1, f2));
}

} // namespace dcurve
