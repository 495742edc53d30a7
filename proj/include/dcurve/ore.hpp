#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dcurve/errors.hpp"
#include "dcurve/rational.hpp"

namespace dcurve {

/// Linear differential operator sum a_i * D^i over Q(t), where D = d/dt.
///
/// The ring is noncommutative with commutation rule D*a = a*D + a'. The
/// coefficient vector is stored ascending with no trailing zeros; the zero
/// operator is the empty vector and its degree is reported as nullopt (the
/// -infinity sentinel). Values are immutable; all operations are pure.
class OreOp {
  public:
    OreOp() = default;
    OreOp(const ScalarRat& c) {
        if (!c.is_zero()) c_.push_back(c);
    }
    OreOp(int c) : OreOp(ScalarRat(c)) {}
    explicit OreOp(std::vector<ScalarRat> coeffs) : c_(std::move(coeffs)) { trim(); }

    static OreOp delta() { return OreOp(std::vector<ScalarRat>{ScalarRat(0), ScalarRat(1)}); }

    bool is_zero() const { return c_.empty(); }
    /// nullopt encodes degree(0) = -infinity.
    std::optional<int> degree() const {
        if (c_.empty()) return std::nullopt;
        return static_cast<int>(c_.size()) - 1;
    }
    ScalarRat coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(c_.size())) return ScalarRat(0);
        return c_[k];
    }
    const ScalarRat& leading() const {
        if (is_zero()) throw domain_error("leading coefficient of zero operator");
        return c_.back();
    }

    friend OreOp operator+(const OreOp& a, const OreOp& b) {
        std::vector<ScalarRat> r(std::max(a.c_.size(), b.c_.size()), ScalarRat(0));
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] = r[i] + a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] + b.c_[i];
        return OreOp(std::move(r));
    }
    friend OreOp operator-(const OreOp& a, const OreOp& b) {
        std::vector<ScalarRat> r(std::max(a.c_.size(), b.c_.size()), ScalarRat(0));
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] = r[i] + a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] - b.c_[i];
        return OreOp(std::move(r));
    }
    OreOp operator-() const {
        std::vector<ScalarRat> r(c_);
        for (auto& x : r) x = -x;
        return OreOp(std::move(r));
    }

    /// Skew product induced by D*a = a*D + a':
    ///   D^i * b = sum_k C(i,k) * b^(k) * D^(i-k).
    friend OreOp operator*(const OreOp& a, const OreOp& b) {
        if (a.is_zero() || b.is_zero()) return OreOp();
        int da = static_cast<int>(a.c_.size()) - 1;
        int db = static_cast<int>(b.c_.size()) - 1;
        // derivatives of the right factor's coefficients up to order da
        std::vector<std::vector<ScalarRat>> dv(db + 1);
        for (int j = 0; j <= db; ++j) {
            dv[j].resize(da + 1);
            dv[j][0] = b.c_[j];
            for (int k = 1; k <= da; ++k) dv[j][k] = dv[j][k - 1].derive();
        }
        std::vector<ScalarRat> r(da + db + 1, ScalarRat(0));
        for (int i = 0; i <= da; ++i) {
            if (a.c_[i].is_zero()) continue;
            for (int j = 0; j <= db; ++j) {
                if (b.c_[j].is_zero()) continue;
                mpz_class binom = 1;
                for (int k = 0; k <= i; ++k) {
                    if (!dv[j][k].is_zero())
                        r[i - k + j] = r[i - k + j] + a.c_[i] * ScalarRat(mpq_class(binom)) * dv[j][k];
                    binom = binom * (i - k) / (k + 1);
                }
            }
        }
        return OreOp(std::move(r));
    }

    /// Apply the operator to a field element: sum a_i * delta^i(r).
    ScalarRat apply(const ScalarRat& r) const {
        ScalarRat out(0), d = r;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (i > 0) d = d.derive();
            out = out + c_[i] * d;
        }
        return out;
    }

    friend bool operator==(const OreOp& a, const OreOp& b) { return a.c_ == b.c_; }
    friend bool operator!=(const OreOp& a, const OreOp& b) { return !(a == b); }

    /// Descending powers of D: "t*D^2 + 2*t*D + t".
    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        for (int k = static_cast<int>(c_.size()) - 1; k >= 0; --k) {
            if (c_[k].is_zero()) continue;
            std::string var = k == 0 ? "" : (k == 1 ? "D" : "D^" + std::to_string(k));
            detail::append_scalar_term(out, c_[k], var);
        }
        return out;
    }

  private:
    std::vector<ScalarRat> c_;
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
};

/// Left Euclidean division: L1 = L2*Q + R with deg(R) < deg(L2).
/// Returns (Q, R); throws on L2 = 0. The pair is unique.
inline std::pair<OreOp, OreOp> lquo_lrem(const OreOp& l1, const OreOp& l2) {
    if (l2.is_zero()) throw division_by_zero("left division by the zero operator");
    OreOp q, r = l1;
    int d2 = *l2.degree();
    while (!r.is_zero() && *r.degree() >= d2) {
        int k = *r.degree() - d2;
        ScalarRat c = r.leading() / l2.leading();
        std::vector<ScalarRat> mono(k + 1, ScalarRat(0));
        mono[k] = c;
        OreOp m(std::move(mono));
        q = q + m;
        r = r - l2 * m;
    }
    return {q, r};
}

/// Right Euclidean division: L1 = Q*L2 + R with deg(R) < deg(L2).
inline std::pair<OreOp, OreOp> rquo_rrem(const OreOp& l1, const OreOp& l2) {
    if (l2.is_zero()) throw division_by_zero("right division by the zero operator");
    OreOp q, r = l1;
    int d2 = *l2.degree();
    while (!r.is_zero() && *r.degree() >= d2) {
        int k = *r.degree() - d2;
        ScalarRat c = r.leading() / l2.leading();
        std::vector<ScalarRat> mono(k + 1, ScalarRat(0));
        mono[k] = c;
        OreOp m(std::move(mono));
        q = q + m;
        r = r - m * l2;
    }
    return {q, r};
}

struct EleResult {
    OreOp r_last; // R_{n-1}, a greatest common left divisor (unnormalized)
    OreOp a_n, b_n, a_prev, b_prev;
};

/// One step of the extended left Euclidean trace.
struct EleStep {
    OreOp r, a, b;
};

/// Full trace of the extended left Euclidean algorithm: steps[i] holds
/// (R_i, A_i, B_i) with R_i = L1*A_i + L2*B_i at every index.
inline std::vector<EleStep> ele_trace(const OreOp& l1, const OreOp& l2) {
    if (l1.is_zero() && l2.is_zero())
        throw domain_error("extended Euclid of two zero operators");
    std::vector<EleStep> steps;
    steps.push_back({l1, OreOp(1), OreOp(0)});
    steps.push_back({l2, OreOp(0), OreOp(1)});
    size_t i = 1;
    while (!steps[i].r.is_zero()) {
        ++i;
        auto [q, r] = lquo_lrem(steps[i - 2].r, steps[i - 1].r);
        steps.push_back({r, steps[i - 2].a - steps[i - 1].a * q,
                         steps[i - 2].b - steps[i - 1].b * q});
    }
    return steps;
}

/// Extended left Euclidean algorithm. Runs the remainder loop
///   R_0 = L1, R_1 = L2, R_i = lrem(R_{i-2}, R_{i-1}),
///   A_i = A_{i-2} - A_{i-1}*Q_{i-1}, B_i = B_{i-2} - B_{i-1}*Q_{i-1}
/// until R_n = 0 and returns (R_{n-1}, A_n, B_n, A_{n-1}, B_{n-1}).
inline EleResult ele(const OreOp& l1, const OreOp& l2) {
    auto steps = ele_trace(l1, l2);
    size_t n = steps.size() - 1;
    return {steps[n - 1].r, steps[n].a, steps[n].b, steps[n - 1].a, steps[n - 1].b};
}

/// Monic greatest common left divisor. Normalization is by right
/// multiplication with the inverse of the leading coefficient, which
/// preserves the left-divisor class.
inline OreOp gcld(const OreOp& l1, const OreOp& l2) {
    OreOp raw = ele(l1, l2).r_last;
    return raw * OreOp(raw.leading().inv());
}

/// Monic greatest common right divisor, via the right-remainder sequence.
/// Normalization is by left multiplication (plain coefficient scaling).
inline OreOp gcrd(const OreOp& l1, const OreOp& l2) {
    if (l1.is_zero() && l2.is_zero())
        throw domain_error("gcrd of two zero operators");
    OreOp a = l1, b = l2;
    while (!b.is_zero()) {
        OreOp r = rquo_rrem(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return OreOp(a.leading().inv()) * a;
}

/// Monic least common right multiple, computed as L1*A_n from the extended
/// Euclidean trace (L1*A_n = -L2*B_n).
inline OreOp lcrm(const OreOp& l1, const OreOp& l2) {
    if (l1.is_zero() || l2.is_zero())
        throw domain_error("lcrm requires both operators nonzero");
    OreOp m = l1 * ele(l1, l2).a_n;
    return m * OreOp(m.leading().inv());
}

/// Determinant of a square ScalarRat matrix by exact Gaussian elimination.
inline ScalarRat scalar_det(std::vector<std::vector<ScalarRat>> m) {
    size_t n = m.size();
    ScalarRat det(1);
    bool flip = false;
    for (size_t k = 0; k < n; ++k) {
        size_t pivot = k;
        while (pivot < n && m[pivot][k].is_zero()) ++pivot;
        if (pivot == n) return ScalarRat(0);
        if (pivot != k) {
            std::swap(m[pivot], m[k]);
            flip = !flip;
        }
        det = det * m[k][k];
        for (size_t i = k + 1; i < n; ++i) {
            if (m[i][k].is_zero()) continue;
            ScalarRat f = m[i][k] / m[k][k];
            for (size_t j = k; j < n; ++j) m[i][j] = m[i][j] - f * m[k][j];
        }
    }
    return flip ? -det : det;
}

/// Wronskian determinant of a tuple: row i is (e_i, e_i', ..., e_i^(n-1)).
/// Zero iff the tuple is linearly dependent over constants.
inline ScalarRat wronskian(const std::vector<ScalarRat>& elems) {
    if (elems.empty()) throw domain_error("wronskian of an empty tuple");
    size_t n = elems.size();
    std::vector<std::vector<ScalarRat>> m(n, std::vector<ScalarRat>(n));
    for (size_t i = 0; i < n; ++i) {
        m[i][0] = elems[i];
        for (size_t j = 1; j < n; ++j) m[i][j] = m[i][j - 1].derive();
    }
    return scalar_det(std::move(m));
}

} // namespace dcurve
