#pragma once

// Exact polynomial algebra in the Riccati variable Ψ.
//
// Ψ(ξ) = 1/(1 + A e^ξ) satisfies Ψ' = Ψ² - Ψ, so every ξ-derivative of a
// polynomial (or ratio of polynomials) in Ψ is again one. Coefficients are
// multivariate polynomials with integer coefficients over the ansatz
// unknowns A_i, B_j and the opaque atoms k and H.

#include <complex>
#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace snls {

enum class SymbolKind : std::uint8_t { A = 0, B = 1, k = 2, H = 3 };

/// One symbolic unknown. Ordering (A0 < A1 < ... < B0 < ... < k < H) is the
/// variable order used by the canonical monomial ordering.
struct SymbolId {
    SymbolKind kind = SymbolKind::A;
    unsigned index = 0;

    static constexpr SymbolId a(unsigned i) { return {SymbolKind::A, i}; }
    static constexpr SymbolId b(unsigned j) { return {SymbolKind::B, j}; }
    static constexpr SymbolId wave_number() { return {SymbolKind::k, 0}; }
    static constexpr SymbolId h() { return {SymbolKind::H, 0}; }

    std::string name() const;

    friend constexpr auto operator<=>(const SymbolId&, const SymbolId&) = default;
};

/// Power product of symbols; the empty product is the unit monomial.
class Monomial {
public:
    using Factor = std::pair<SymbolId, unsigned>;

    Monomial() = default;
    explicit Monomial(SymbolId s, unsigned exponent = 1);

    unsigned degree() const;
    unsigned exponent(SymbolId s) const;
    std::span<const Factor> factors() const { return factors_; }
    bool is_unit() const { return factors_.empty(); }

    /// Divides out one power of `s`; requires exponent(s) > 0.
    Monomial without_one(SymbolId s) const;

    friend Monomial operator*(const Monomial& lhs, const Monomial& rhs);
    friend bool operator==(const Monomial&, const Monomial&) = default;

    std::string to_string() const;

private:
    std::vector<Factor> factors_;  // sorted by symbol, all exponents > 0
};

/// Graded lexicographic order, largest first: higher total degree precedes,
/// ties broken lexicographically in the SymbolId variable order.
struct GrlexDescending {
    bool operator()(const Monomial& lhs, const Monomial& rhs) const;
};

/// Numeric values for every symbol that may appear in a CoeffExpr.
struct SymbolValues {
    std::vector<std::complex<double>> a;
    std::vector<std::complex<double>> b;
    std::complex<double> k{0.0};
    std::complex<double> h{0.0};

    std::complex<double> operator()(SymbolId s) const;
};

/// Sparse multivariate polynomial with int64 coefficients. Terms are kept in
/// canonical form: GrlexDescending order, no zero coefficients. Arithmetic
/// throws std::overflow_error rather than wrapping.
class CoeffExpr {
public:
    using Coefficient = std::int64_t;
    using TermMap = std::map<Monomial, Coefficient, GrlexDescending>;

    CoeffExpr() = default;
    CoeffExpr(Coefficient constant);  // NOLINT(google-explicit-constructor)
    CoeffExpr(const Monomial& m, Coefficient c);

    static CoeffExpr symbol(SymbolId s);

    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }
    unsigned total_degree() const;

    CoeffExpr derivative(SymbolId s) const;
    std::complex<double> evaluate(const SymbolValues& values) const;

    CoeffExpr& operator+=(const CoeffExpr& rhs);
    CoeffExpr& operator-=(const CoeffExpr& rhs);
    CoeffExpr& operator*=(const CoeffExpr& rhs);
    friend CoeffExpr operator+(CoeffExpr lhs, const CoeffExpr& rhs) { return lhs += rhs; }
    friend CoeffExpr operator-(CoeffExpr lhs, const CoeffExpr& rhs) { return lhs -= rhs; }
    friend CoeffExpr operator*(const CoeffExpr& lhs, const CoeffExpr& rhs);
    friend CoeffExpr operator-(const CoeffExpr& e);
    friend bool operator==(const CoeffExpr&, const CoeffExpr&) = default;

    /// Canonical text: terms in canonical order, explicit integer
    /// coefficients, factors in variable order, e.g. "1*A0*B0^2*H + 2*A0^3".
    std::string to_string() const;

    /// Accepts sums of products of integers and symbols (A<i>, B<j>, k, H)
    /// with optional ^exponent; "k^2*A1*B0^2", "-3*k^2*A0*B0*B1", "6*A0^2*A2".
    static CoeffExpr parse(std::string_view text);

private:
    void add_term(const Monomial& m, Coefficient c);
    TermMap terms_;
};

/// Polynomial in Ψ; coeffs[i] multiplies Ψ^i. Trailing zero coefficients are
/// trimmed, so the zero polynomial is the empty sequence.
class PsiPoly {
public:
    PsiPoly() = default;
    explicit PsiPoly(std::vector<CoeffExpr> coeffs);

    static PsiPoly constant(CoeffExpr c);
    static PsiPoly monomial(CoeffExpr c, std::size_t power);
    static PsiPoly psi() { return monomial(CoeffExpr{1}, 1); }

    bool is_zero() const { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    std::span<const CoeffExpr> coefficients() const { return coeffs_; }
    /// Zero beyond the stored degree.
    const CoeffExpr& coeff(std::size_t i) const;

    /// Formal d/dΨ.
    PsiPoly formal_derivative() const;

    std::vector<std::complex<double>> evaluate_coefficients(const SymbolValues& values) const;
    std::complex<double> evaluate(const SymbolValues& values, std::complex<double> psi) const;

    PsiPoly& operator+=(const PsiPoly& rhs);
    PsiPoly& operator-=(const PsiPoly& rhs);
    friend PsiPoly operator+(PsiPoly lhs, const PsiPoly& rhs) { return lhs += rhs; }
    friend PsiPoly operator-(PsiPoly lhs, const PsiPoly& rhs) { return lhs -= rhs; }
    friend PsiPoly operator*(const PsiPoly& lhs, const PsiPoly& rhs);
    friend PsiPoly operator*(const CoeffExpr& c, const PsiPoly& p);
    friend PsiPoly operator-(const PsiPoly& p);
    friend bool operator==(const PsiPoly&, const PsiPoly&) = default;

    /// One line per stored power: "Psi^i: <CoeffExpr canonical text>".
    std::string to_string() const;

private:
    void trim();
    std::vector<CoeffExpr> coeffs_;
};

PsiPoly poly_add(const PsiPoly& a, const PsiPoly& b);
PsiPoly poly_mul(const PsiPoly& a, const PsiPoly& b);

/// d/dξ of p(Ψ(ξ)) under Ψ' = Ψ² - Ψ: p'(Ψ)·(Ψ² - Ψ).
PsiPoly riccati_derivative(const PsiPoly& p);

/// T/V with V not the zero polynomial. No common-factor cancellation is
/// attempted; canonical form means canonical numerator and denominator.
class PsiRational {
public:
    PsiRational(PsiPoly numerator, PsiPoly denominator);

    const PsiPoly& numerator() const { return numerator_; }
    const PsiPoly& denominator() const { return denominator_; }

    std::complex<double> evaluate(const SymbolValues& values, std::complex<double> psi) const;

    friend bool operator==(const PsiRational&, const PsiRational&) = default;

private:
    PsiPoly numerator_;
    PsiPoly denominator_;
};

/// (Ψ² - Ψ)(T'V - TV')/V².
PsiRational rat_derivative(const PsiRational& r);

/// Closed-form second derivative over V³:
///   [(Ψ²-Ψ)(2Ψ-1)(T'V-TV')·V + (Ψ²-Ψ)²(V(T''V-TV'') - 2V'T'V + 2T V'²)] / V³.
PsiRational rat_second_derivative(const PsiRational& r);

/// Numerator of an equation assembled over a common denominator; its
/// Ψ-coefficients are the algebraic system.
PsiPoly clear_denominators(const PsiRational& equation);

/// Horner evaluation of a numeric polynomial (coefficient i multiplies x^i).
template <typename Scalar>
Scalar horner(std::span<const Scalar> coeffs, Scalar x) {
    Scalar acc{0};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

}  // namespace snls
