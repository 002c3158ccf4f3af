#include "gflab/ode_guess.hpp"

#include "gflab/padic.hpp"

#include <sstream>

#include "modlin.hpp"

namespace gflab {

long LinearODE::x_degree() const {
    long d = -1;
    for (const auto& g : gamma) d = std::max(d, g.degree());
    return d;
}

std::string LinearODE::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (long i = order; i >= 0; --i) {
        if (gamma[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << gamma[i].to_string() << ")";
        if (i > 0) os << "*D^" << i;
    }
    os << " = 0";
    return os.str();
}

QSeries apply_ode(const LinearODE& ode, const QSeries& f) {
    QSeries acc = QSeries::zero(std::max(0L, f.order() - ode.order));
    QSeries der = f;
    for (long i = 0; i <= ode.order; ++i) {
        if (!ode.gamma[i].is_zero()) {
            QSeries term = QSeries::zero(der.order());
            for (long j = 0; j <= ode.gamma[i].degree(); ++j) {
                const Rat& c = ode.gamma[i].coeff(j);
                if (c != 0) term = term + c * der.shifted(j).truncated(der.order());
            }
            acc = acc + term;
        }
        if (i < ode.order) der = derivative(der);
    }
    return acc;
}

namespace {

// common denominator cleared so matrix entries are integers
std::vector<std::vector<Int>> build_system(const QSeries& f, long mu, long d, long rows) {
    // columns indexed by (i, j): gamma_i's X^j coefficient
    std::vector<QSeries> ders;
    ders.push_back(f);
    for (long i = 1; i <= mu; ++i) ders.push_back(derivative(ders.back()));

    Int den_lcm = 1;
    for (long i = 0; i <= mu; ++i)
        for (long n = 0; n <= ders[i].order(); ++n)
            if (ders[i].coeff(n) != 0)
                mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
                        Int(ders[i].coeff(n).get_den()).get_mpz_t());

    const long cols = (mu + 1) * (d + 1);
    std::vector<std::vector<Int>> m(rows, std::vector<Int>(cols));
    for (long i = 0; i <= mu; ++i) {
        for (long j = 0; j <= d; ++j) {
            long col = i * (d + 1) + j;
            // X^j * f^(i): coefficient of X^k is f^(i)_{k-j}
            for (long k = 0; k < rows; ++k) {
                long n = k - j;
                if (n < 0 || n > ders[i].order()) continue;
                Rat v = ders[i].coeff(n) * Rat(den_lcm);
                if (!is_integer(v)) v.canonicalize();
                m[k][col] = Int(v.get_num()) / Int(v.get_den());
            }
        }
    }
    return m;
}

}  // namespace

std::optional<LinearODE> find_ode(const QSeries& f, long max_order, long max_degree,
                                  long held_out) {
    if (!f.is_power_series()) throw std::domain_error("find_ode: Laurent input");
    for (long mu = 1; mu <= max_order; ++mu) {
        for (long d = 0; d <= max_degree; ++d) {
            const long cols = (mu + 1) * (d + 1);
            const long avail = f.order() - mu + 1;  // exact rows available
            const long need = cols + mu + held_out;
            if (avail < need)
                throw insufficient_coefficients(
                    "find_ode: order " + std::to_string(f.order()) + " too small for bounds (" +
                    std::to_string(mu) + "," + std::to_string(d) + ") plus " +
                    std::to_string(held_out) + " held-out rows");
            // solve on all rows except the held-out block; the verification
            // below re-checks every known coefficient anyway
            const long rows = avail - held_out;
            auto m = build_system(f, mu, d, rows);
            auto kernel = modlin::kernel_exact(m);
            if (!kernel || kernel->empty()) continue;
            // assemble from the first kernel vector, verify on the full series
            for (const auto& vec : *kernel) {
                LinearODE ode;
                ode.order = mu;
                ode.gamma.resize(mu + 1);
                for (long i = 0; i <= mu; ++i) {
                    std::vector<Rat> cs(d + 1);
                    for (long j = 0; j <= d; ++j) cs[j] = vec[i * (d + 1) + j];
                    ode.gamma[i] = PolyQ(std::move(cs));
                }
                if (ode.gamma[mu].is_zero()) continue;  // lower order would cover it
                QSeries residual = apply_ode(ode, f);
                if (!residual.is_zero()) continue;
                // primitive integer form, positive leading polynomial
                PolyQ lead = ode.gamma[mu];
                Int den_lcm = 1, num_gcd = 0;
                for (long i = 0; i <= mu; ++i)
                    for (const Rat& c : ode.gamma[i].coeffs()) {
                        if (c == 0) continue;
                        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), Int(c.get_den()).get_mpz_t());
                        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), Int(c.get_num()).get_mpz_t());
                    }
                Rat scale(den_lcm, num_gcd);
                scale.canonicalize();
                if (ode.gamma[mu].coeff(ode.gamma[mu].degree()) < 0) scale = -scale;
                for (auto& g : ode.gamma) g = scale * g;
                return ode;
            }
        }
    }
    return std::nullopt;
}

}  // namespace gflab
