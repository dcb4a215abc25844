#include "snls/psi_algebra.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace snls {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("CoeffExpr coefficient overflow");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("CoeffExpr coefficient overflow");
    return r;
}

}  // namespace

// ---------------------------------------------------------------- SymbolId

std::string SymbolId::name() const {
    switch (kind) {
        case SymbolKind::A: return "A" + std::to_string(index);
        case SymbolKind::B: return "B" + std::to_string(index);
        case SymbolKind::k: return "k";
        case SymbolKind::H: return "H";
    }
    return "?";
}

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(SymbolId s, unsigned exponent) {
    if (exponent > 0) factors_.emplace_back(s, exponent);
}

unsigned Monomial::degree() const {
    unsigned d = 0;
    for (const auto& [s, e] : factors_) d += e;
    return d;
}

unsigned Monomial::exponent(SymbolId s) const {
    auto it = std::lower_bound(factors_.begin(), factors_.end(), s,
                               [](const Factor& f, SymbolId v) { return f.first < v; });
    return (it != factors_.end() && it->first == s) ? it->second : 0U;
}

Monomial Monomial::without_one(SymbolId s) const {
    Monomial out = *this;
    auto it = std::find_if(out.factors_.begin(), out.factors_.end(),
                           [&](const Factor& f) { return f.first == s; });
    if (it == out.factors_.end()) throw std::logic_error("Monomial::without_one: symbol absent");
    if (--it->second == 0) out.factors_.erase(it);
    return out;
}

Monomial operator*(const Monomial& lhs, const Monomial& rhs) {
    Monomial out;
    auto& f = out.factors_;
    f.reserve(lhs.factors_.size() + rhs.factors_.size());
    auto i = lhs.factors_.begin();
    auto j = rhs.factors_.begin();
    while (i != lhs.factors_.end() || j != rhs.factors_.end()) {
        if (j == rhs.factors_.end() || (i != lhs.factors_.end() && i->first < j->first)) {
            f.push_back(*i++);
        } else if (i == lhs.factors_.end() || j->first < i->first) {
            f.push_back(*j++);
        } else {
            f.emplace_back(i->first, i->second + j->second);
            ++i;
            ++j;
        }
    }
    return out;
}

std::string Monomial::to_string() const {
    std::string out;
    for (const auto& [s, e] : factors_) {
        if (!out.empty()) out += '*';
        out += s.name();
        if (e != 1) out += '^' + std::to_string(e);
    }
    return out;
}

bool GrlexDescending::operator()(const Monomial& lhs, const Monomial& rhs) const {
    const unsigned dl = lhs.degree();
    const unsigned dr = rhs.degree();
    if (dl != dr) return dl > dr;
    auto fl = lhs.factors();
    auto fr = rhs.factors();
    std::size_t i = 0;
    for (; i < fl.size() && i < fr.size(); ++i) {
        if (fl[i].first != fr[i].first) return fl[i].first < fr[i].first;
        if (fl[i].second != fr[i].second) return fl[i].second > fr[i].second;
    }
    // Equal degree and an identical prefix means identical monomials.
    return false;
}

// ---------------------------------------------------------------- SymbolValues

std::complex<double> SymbolValues::operator()(SymbolId s) const {
    switch (s.kind) {
        case SymbolKind::A:
            if (s.index >= a.size()) throw std::out_of_range("no value for " + s.name());
            return a[s.index];
        case SymbolKind::B:
            if (s.index >= b.size()) throw std::out_of_range("no value for " + s.name());
            return b[s.index];
        case SymbolKind::k: return k;
        case SymbolKind::H: return h;
    }
    return {};
}

// ---------------------------------------------------------------- CoeffExpr

CoeffExpr::CoeffExpr(Coefficient constant) {
    if (constant != 0) terms_.emplace(Monomial{}, constant);
}

CoeffExpr::CoeffExpr(const Monomial& m, Coefficient c) {
    if (c != 0) terms_.emplace(m, c);
}

CoeffExpr CoeffExpr::symbol(SymbolId s) { return CoeffExpr{Monomial{s}, 1}; }

unsigned CoeffExpr::total_degree() const {
    return terms_.empty() ? 0U : terms_.begin()->first.degree();
}

void CoeffExpr::add_term(const Monomial& m, Coefficient c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second = checked_add(it->second, c);
        if (it->second == 0) terms_.erase(it);
    }
}

CoeffExpr& CoeffExpr::operator+=(const CoeffExpr& rhs) {
    for (const auto& [m, c] : rhs.terms_) add_term(m, c);
    return *this;
}

CoeffExpr& CoeffExpr::operator-=(const CoeffExpr& rhs) {
    for (const auto& [m, c] : rhs.terms_) add_term(m, checked_mul(c, -1));
    return *this;
}

CoeffExpr operator*(const CoeffExpr& lhs, const CoeffExpr& rhs) {
    CoeffExpr out;
    for (const auto& [ml, cl] : lhs.terms_)
        for (const auto& [mr, cr] : rhs.terms_) out.add_term(ml * mr, checked_mul(cl, cr));
    return out;
}

CoeffExpr& CoeffExpr::operator*=(const CoeffExpr& rhs) { return *this = *this * rhs; }

CoeffExpr operator-(const CoeffExpr& e) {
    CoeffExpr out;
    for (const auto& [m, c] : e.terms_) out.terms_.emplace(m, checked_mul(c, -1));
    return out;
}

CoeffExpr CoeffExpr::derivative(SymbolId s) const {
    CoeffExpr out;
    for (const auto& [m, c] : terms_) {
        const unsigned e = m.exponent(s);
        if (e == 0) continue;
        out.add_term(m.without_one(s), checked_mul(c, static_cast<Coefficient>(e)));
    }
    return out;
}

std::complex<double> CoeffExpr::evaluate(const SymbolValues& values) const {
    std::complex<double> sum{0.0};
    for (const auto& [m, c] : terms_) {
        std::complex<double> term{static_cast<double>(c)};
        for (const auto& [s, e] : m.factors()) {
            const auto v = values(s);
            for (unsigned p = 0; p < e; ++p) term *= v;
        }
        sum += term;
    }
    return sum;
}

std::string CoeffExpr::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        const Coefficient mag = c < 0 ? -c : c;
        if (first) {
            if (c < 0) out += '-';
        } else {
            out += c < 0 ? " - " : " + ";
        }
        out += std::to_string(mag);
        if (!m.is_unit()) out += '*' + m.to_string();
        first = false;
    }
    return out;
}

namespace {

class ExprParser {
public:
    explicit ExprParser(std::string_view text) : s_(text) {}

    CoeffExpr parse() {
        CoeffExpr sum;
        skip_ws();
        if (at_end()) fail("empty expression");
        bool first = true;
        while (!at_end()) {
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
                skip_ws();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            sum += parse_term(sign);
            first = false;
            skip_ws();
        }
        return sum;
    }

private:
    CoeffExpr parse_term(int sign) {
        CoeffExpr::Coefficient coeff = sign;
        Monomial mono;
        bool any = false;
        for (;;) {
            skip_ws();
            if (at_end()) fail("dangling operator");
            if (std::isdigit(static_cast<unsigned char>(peek()))) {
                coeff = checked_mul(coeff, parse_uint());
            } else {
                const SymbolId sym = parse_symbol();
                unsigned e = 1;
                skip_ws();
                if (!at_end() && peek() == '^') {
                    ++pos_;
                    skip_ws();
                    e = static_cast<unsigned>(parse_uint());
                }
                mono = mono * Monomial{sym, e};
            }
            any = true;
            skip_ws();
            if (!at_end() && peek() == '*') {
                ++pos_;
                continue;
            }
            break;
        }
        if (!any) fail("empty term");
        return CoeffExpr{mono, coeff};
    }

    SymbolId parse_symbol() {
        const char c = peek();
        if (c == 'k') {
            ++pos_;
            return SymbolId::wave_number();
        }
        if (c == 'H') {
            ++pos_;
            return SymbolId::h();
        }
        if (c == 'A' || c == 'B') {
            ++pos_;
            if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("missing index");
            const auto idx = static_cast<unsigned>(parse_uint());
            return c == 'A' ? SymbolId::a(idx) : SymbolId::b(idx);
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    std::int64_t parse_uint() {
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
        if (ec != std::errc{}) fail("bad integer");
        pos_ = static_cast<std::size_t>(ptr - s_.data());
        return v;
    }

    [[noreturn]] void fail(const std::string& why) const {
        throw std::invalid_argument("CoeffExpr::parse: " + why + " at offset " + std::to_string(pos_) +
                                    " in \"" + std::string(s_) + "\"");
    }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }
    bool at_end() const { return pos_ >= s_.size(); }
    char peek() const { return s_[pos_]; }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

CoeffExpr CoeffExpr::parse(std::string_view text) { return ExprParser{text}.parse(); }

// ---------------------------------------------------------------- PsiPoly

PsiPoly::PsiPoly(std::vector<CoeffExpr> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

PsiPoly PsiPoly::constant(CoeffExpr c) { return PsiPoly{std::vector<CoeffExpr>{std::move(c)}}; }

PsiPoly PsiPoly::monomial(CoeffExpr c, std::size_t power) {
    std::vector<CoeffExpr> v(power + 1);
    v[power] = std::move(c);
    return PsiPoly{std::move(v)};
}

void PsiPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

const CoeffExpr& PsiPoly::coeff(std::size_t i) const {
    static const CoeffExpr zero;
    return i < coeffs_.size() ? coeffs_[i] : zero;
}

PsiPoly PsiPoly::formal_derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<CoeffExpr> out(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        out[i - 1] = CoeffExpr{static_cast<CoeffExpr::Coefficient>(i)} * coeffs_[i];
    return PsiPoly{std::move(out)};
}

std::vector<std::complex<double>> PsiPoly::evaluate_coefficients(const SymbolValues& values) const {
    std::vector<std::complex<double>> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(c.evaluate(values));
    return out;
}

std::complex<double> PsiPoly::evaluate(const SymbolValues& values, std::complex<double> psi) const {
    const auto c = evaluate_coefficients(values);
    return horner<std::complex<double>>(c, psi);
}

PsiPoly& PsiPoly::operator+=(const PsiPoly& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    trim();
    return *this;
}

PsiPoly& PsiPoly::operator-=(const PsiPoly& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
    trim();
    return *this;
}

PsiPoly operator*(const PsiPoly& lhs, const PsiPoly& rhs) {
    if (lhs.is_zero() || rhs.is_zero()) return {};
    std::vector<CoeffExpr> out(lhs.coeffs_.size() + rhs.coeffs_.size() - 1);
    for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i) {
        if (lhs.coeffs_[i].is_zero()) continue;
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += lhs.coeffs_[i] * rhs.coeffs_[j];
    }
    return PsiPoly{std::move(out)};
}

PsiPoly operator*(const CoeffExpr& c, const PsiPoly& p) {
    std::vector<CoeffExpr> out;
    out.reserve(p.coeffs_.size());
    for (const auto& x : p.coeffs_) out.push_back(c * x);
    return PsiPoly{std::move(out)};
}

PsiPoly operator-(const PsiPoly& p) { return CoeffExpr{-1} * p; }

std::string PsiPoly::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) os << "Psi^" << i << ": " << coeffs_[i].to_string() << '\n';
    return os.str();
}

PsiPoly poly_add(const PsiPoly& a, const PsiPoly& b) { return a + b; }
PsiPoly poly_mul(const PsiPoly& a, const PsiPoly& b) { return a * b; }

namespace {

// Ψ² - Ψ
const PsiPoly& riccati_rhs() {
    static const PsiPoly p{std::vector<CoeffExpr>{CoeffExpr{0}, CoeffExpr{-1}, CoeffExpr{1}}};
    return p;
}

}  // namespace

PsiPoly riccati_derivative(const PsiPoly& p) { return p.formal_derivative() * riccati_rhs(); }

// ---------------------------------------------------------------- PsiRational

PsiRational::PsiRational(PsiPoly numerator, PsiPoly denominator)
    : numerator_(std::move(numerator)), denominator_(std::move(denominator)) {
    if (denominator_.is_zero()) throw std::invalid_argument("PsiRational: zero denominator");
}

std::complex<double> PsiRational::evaluate(const SymbolValues& values, std::complex<double> psi) const {
    return numerator_.evaluate(values, psi) / denominator_.evaluate(values, psi);
}

PsiRational rat_derivative(const PsiRational& r) {
    const PsiPoly& t = r.numerator();
    const PsiPoly& v = r.denominator();
    PsiPoly wronskian = t.formal_derivative() * v - t * v.formal_derivative();
    return PsiRational{riccati_rhs() * wronskian, v * v};
}

PsiRational rat_second_derivative(const PsiRational& r) {
    const PsiPoly& t = r.numerator();
    const PsiPoly& v = r.denominator();
    const PsiPoly t1 = t.formal_derivative();
    const PsiPoly v1 = v.formal_derivative();
    const PsiPoly t2 = t1.formal_derivative();
    const PsiPoly v2 = v1.formal_derivative();
    const PsiPoly& p = riccati_rhs();
    const PsiPoly dp = p.formal_derivative();  // 2Ψ - 1

    const PsiPoly first = p * dp * (t1 * v - t * v1) * v;
    const PsiPoly second = p * p *
                           (v * (t2 * v - t * v2) - CoeffExpr{2} * (v1 * t1 * v) +
                            CoeffExpr{2} * (t * v1 * v1));
    return PsiRational{first + second, v * v * v};
}

PsiPoly clear_denominators(const PsiRational& equation) { return equation.numerator(); }

}  // namespace snls
