#include "gflab/relations.hpp"

#include "gflab/padic.hpp"
#include <climits>

#include <sstream>

#include "modlin.hpp"

namespace gflab {

bool RelationPoly::is_zero() const {
    for (const auto& [e, c] : terms_)
        if (!c.is_zero()) return false;
    return true;
}

bool RelationPoly::coefficients_constant() const {
    for (const auto& [e, c] : terms_)
        if (c.degree() > 0) return false;
    return true;
}

void RelationPoly::set_term(const std::vector<int>& exponents, PolyQ coeff) {
    if (static_cast<long>(exponents.size()) != n_)
        throw std::invalid_argument("RelationPoly: exponent arity mismatch");
    long sum = 0;
    for (int e : exponents) sum += e;
    if (sum != delta_) throw std::invalid_argument("RelationPoly: monomial degree mismatch");
    if (coeff.is_zero()) terms_.erase(exponents);
    else terms_[exponents] = std::move(coeff);
}

void RelationPoly::add_term(const std::vector<int>& exponents, const PolyQ& coeff) {
    auto it = terms_.find(exponents);
    if (it == terms_.end()) set_term(exponents, coeff);
    else {
        PolyQ s = it->second + coeff;
        set_term(exponents, s);
    }
}

std::pair<std::vector<int>, PolyQ> RelationPoly::leading_term() const {
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it)
        if (!it->second.is_zero()) return {it->first, it->second};
    return {std::vector<int>(n_, 0), PolyQ()};
}

QSeries RelationPoly::apply_to_series(const std::vector<QSeries>& ys) const {
    if (static_cast<long>(ys.size()) != n_)
        throw std::invalid_argument("apply_to_series: arity mismatch");
    long ord = LONG_MAX;
    for (const auto& y : ys) ord = std::min(ord, y.order());
    QSeries acc = QSeries::zero(ord);
    for (const auto& [e, c] : terms_) {
        if (c.is_zero()) continue;
        QSeries mono = QSeries::constant(1, ord);
        for (long i = 0; i < n_; ++i)
            for (int k = 0; k < e[i]; ++k) mono = (mono * ys[i]).truncated(ord);
        QSeries withc = QSeries::zero(ord);
        for (long j = 0; j <= c.degree(); ++j)
            if (c.coeff(j) != 0) withc = withc + c.coeff(j) * mono.shifted(j).truncated(ord);
        acc = acc + withc;
    }
    return acc;
}

ComplexBall RelationPoly::eval_complex_points(const std::vector<ComplexBall>& vals,
                                              mpfr_prec_t prec) const {
    if (!coefficients_constant())
        throw std::domain_error("eval at points requires constant coefficients");
    ComplexBall acc(prec);
    for (const auto& [e, c] : terms_) {
        ComplexBall t = ComplexBall::exact(c.coeff(0), 0, prec);
        for (long i = 0; i < n_; ++i)
            for (int k = 0; k < e[i]; ++k) t = t * vals[i];
        acc = acc + t;
    }
    return acc;
}

PadicNum RelationPoly::eval_padic_points(const std::vector<PadicNum>& vals, long precision) const {
    if (!coefficients_constant())
        throw std::domain_error("eval at points requires constant coefficients");
    if (vals.empty()) throw std::invalid_argument("no values");
    const Int& p = vals[0].prime();
    PadicNum acc = PadicNum::zero(p, precision);
    for (const auto& [e, c] : terms_) {
        PadicNum t = PadicNum::from_rat(c.coeff(0), p, precision);
        for (long i = 0; i < n_; ++i)
            for (int k = 0; k < e[i]; ++k) t = t * vals[i];
        acc = acc + t;
    }
    return acc;
}

RelationPoly RelationPoly::multiplied(const RelationPoly& other) const {
    if (n_ != other.n_) throw std::invalid_argument("multiplied: arity mismatch");
    RelationPoly out(n_, delta_ + other.delta_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : other.terms_) {
            std::vector<int> e(n_);
            for (long i = 0; i < n_; ++i) e[i] = e1[i] + e2[i];
            out.add_term(e, c1 * c2);
        }
    return out;
}

RelationPoly RelationPoly::renamed(const std::vector<int>& perm) const {
    RelationPoly out(n_, delta_);
    for (const auto& [e, c] : terms_) {
        std::vector<int> ne(n_, 0);
        for (long i = 0; i < n_; ++i) ne[perm[i]] += e[i];
        out.add_term(ne, c);
    }
    return out;
}

std::string RelationPoly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (it->second.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << it->second.to_string() << ")";
        for (long i = 0; i < n_; ++i) {
            if (it->first[i] == 0) continue;
            os << "*Y" << (i + 1);
            if (it->first[i] > 1) os << "^" << it->first[i];
        }
    }
    return os.str();
}

namespace {

void enumerate_monomials(long n, long delta, std::vector<int>& cur,
                         std::vector<std::vector<int>>& out) {
    if (n == 1) {
        cur.push_back(static_cast<int>(delta));
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (long e = delta; e >= 0; --e) {
        cur.push_back(static_cast<int>(e));
        enumerate_monomials(n - 1, delta - e, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<RelationPoly> find_functional_relations(const std::vector<QSeries>& ys, long delta,
                                                    long xdeg, long margin) {
    const long n = static_cast<long>(ys.size());
    if (n == 0) return {};
    long ord = LONG_MAX;
    for (const auto& y : ys) {
        if (!y.is_power_series()) throw std::domain_error("find_functional_relations: Laurent input");
        ord = std::min(ord, y.order());
    }
    std::vector<std::vector<int>> monomials;
    std::vector<int> cur;
    enumerate_monomials(n, delta, cur, monomials);

    const long unknowns = static_cast<long>(monomials.size()) * (xdeg + 1);
    if (ord + 1 < unknowns + margin)
        throw insufficient_coefficients(
            "find_functional_relations: need series order >= " + std::to_string(unknowns + margin));

    // expand each monomial product once
    std::vector<QSeries> prods;
    prods.reserve(monomials.size());
    for (const auto& e : monomials) {
        QSeries mono = QSeries::constant(1, ord);
        for (long i = 0; i < n; ++i)
            for (int k = 0; k < e[i]; ++k) mono = (mono * ys[i]).truncated(ord);
        prods.push_back(mono);
    }

    // integer matrix: rows = X-power coefficients, cols = (monomial, j)
    Int den_lcm = 1;
    for (const auto& ps : prods)
        for (long k = 0; k <= ps.order(); ++k)
            if (ps.coeff(k) != 0)
                mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), Int(ps.coeff(k).get_den()).get_mpz_t());

    const long rows = ord + 1;
    std::vector<std::vector<Int>> m(rows, std::vector<Int>(unknowns));
    for (size_t mi = 0; mi < prods.size(); ++mi) {
        for (long j = 0; j <= xdeg; ++j) {
            long col = static_cast<long>(mi) * (xdeg + 1) + j;
            for (long k = j; k < rows; ++k) {
                Rat v = prods[mi].coeff(k - j) * Rat(den_lcm);
                v.canonicalize();
                m[k][col] = Int(v.get_num());
            }
        }
    }

    // certified emptiness if full column rank mod one prime
    if (modlin::rank_mod_p(m, modlin::kPrimes[0]) == static_cast<size_t>(unknowns)) return {};

    auto kernel = modlin::kernel_exact(m);
    if (!kernel)
        throw std::runtime_error("find_functional_relations: rational reconstruction failed");
    std::vector<RelationPoly> out;
    for (const auto& vec : *kernel) {
        RelationPoly rel(n, delta);
        for (size_t mi = 0; mi < monomials.size(); ++mi) {
            std::vector<Rat> cs(xdeg + 1);
            for (long j = 0; j <= xdeg; ++j) cs[j] = vec[mi * (xdeg + 1) + j];
            PolyQ c(std::move(cs));
            if (!c.is_zero()) rel.set_term(monomials[mi], c);
        }
        if (rel.is_zero()) continue;
        // a relation must annihilate the truncations exactly
        if (!rel.apply_to_series(ys).is_zero())
            throw std::logic_error("find_functional_relations: reconstructed vector fails exact check");
        out.push_back(std::move(rel));
    }
    return out;
}

SpecializeResult specialize_relation(const RelationPoly& rel, const Rat& xi) {
    SpecializeResult res;
    res.specialized = RelationPoly(rel.n_vars(), rel.delta());
    for (const auto& [e, c] : rel.terms()) {
        Rat v = c.eval(xi);
        if (v != 0) res.specialized.set_term(e, PolyQ::constant(v));
    }
    auto [lead_mono, lead_coeff] = rel.leading_term();
    res.safe = !lead_coeff.is_zero() && lead_coeff.eval(xi) != 0;
    return res;
}

}  // namespace gflab
