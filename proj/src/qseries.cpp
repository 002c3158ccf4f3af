#include "gflab/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace gflab {

const Rat QSeries::rat_zero = Rat(0);

QSeries::QSeries(long offset, long order, std::vector<Rat> coeffs)
    : offset_(offset), order_(order), c_(std::move(coeffs)) {
    if (order_ < offset_ - 1)
        throw std::invalid_argument("QSeries: order below offset-1");
    if (static_cast<long>(c_.size()) != order_ - offset_ + 1)
        throw std::invalid_argument("QSeries: coefficient count does not match window");
}

QSeries QSeries::constant(const Rat& c, long order) {
    std::vector<Rat> v(order + 1);
    v[0] = c;
    return QSeries(0, order, std::move(v));
}

QSeries QSeries::x(long order) { return monomial(1, 1, order); }

QSeries QSeries::monomial(const Rat& c, long exponent, long order) {
    long off = std::min(exponent, 0L);
    std::vector<Rat> v(order - off + 1);
    if (exponent <= order) v[exponent - off] = c;
    return QSeries(off, order, std::move(v));
}

const Rat& QSeries::coeff(long n) const {
    if (n > order_)
        throw std::out_of_range("QSeries::coeff: beyond certified order");
    if (n < offset_) return rat_zero;
    return c_[n - offset_];
}

bool QSeries::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rat& r) { return r == 0; });
}

long QSeries::valuation() const {
    for (long i = 0; i < static_cast<long>(c_.size()); ++i)
        if (c_[i] != 0) return offset_ + i;
    return order_ + 1;
}

bool QSeries::is_integral() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rat& r) { return is_integer(r); });
}

bool QSeries::is_power_series() const {
    for (long i = 0; i < std::min<long>(-offset_, c_.size()); ++i)
        if (c_[i] != 0) return false;
    return true;
}

QSeries QSeries::truncated(long new_order) const {
    if (new_order >= order_) return *this;
    if (new_order < offset_ - 1) new_order = offset_ - 1;
    std::vector<Rat> v(c_.begin(), c_.begin() + (new_order - offset_ + 1));
    return QSeries(offset_, new_order, std::move(v));
}

QSeries QSeries::normalized() const {
    long v = std::min(valuation(), 0L);
    if (v == offset_) return *this;
    std::vector<Rat> out(c_.begin() + (v - offset_), c_.end());
    return QSeries(v, order_, std::move(out));
}

QSeries QSeries::tight() const {
    long v = std::min(valuation(), order_ + 1);
    if (v == offset_) return *this;
    if (v > order_) return QSeries(order_ + 1, order_, {});
    std::vector<Rat> out(c_.begin() + (v - offset_), c_.end());
    return QSeries(v, order_, std::move(out));
}

QSeries QSeries::shifted(long k) const {
    QSeries r = *this;
    r.offset_ += k;
    r.order_ += k;
    return r;
}

QSeries operator+(const QSeries& a, const QSeries& b) {
    long off = std::min(a.offset_, b.offset_);
    long ord = std::min(a.order_, b.order_);
    if (ord < off - 1) ord = off - 1;
    std::vector<Rat> v(ord - off + 1);
    for (long n = off; n <= ord; ++n) v[n - off] = a.coeff(n) + b.coeff(n);
    return QSeries(off, ord, std::move(v));
}

QSeries QSeries::operator-() const {
    QSeries r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

QSeries operator-(const QSeries& a, const QSeries& b) { return a + (-b); }

QSeries operator*(const Rat& c, const QSeries& a) {
    QSeries r = a;
    for (auto& x : r.c_) x *= c;
    return r;
}

namespace {

// convolution over the integers (both factors integral): avoids mpq
// canonicalization in the inner loop
std::vector<Rat> convolve_int(const std::vector<Rat>& a, const std::vector<Rat>& b, long n_out) {
    std::vector<Int> ai(a.size()), bi(b.size());
    for (size_t i = 0; i < a.size(); ++i) ai[i] = a[i].get_num();
    for (size_t i = 0; i < b.size(); ++i) bi[i] = b[i].get_num();
    std::vector<Int> out(n_out);
    Int tmp;
    for (long i = 0; i < static_cast<long>(ai.size()) && i < n_out; ++i) {
        if (ai[i] == 0) continue;
        long jmax = std::min<long>(bi.size(), n_out - i);
        for (long j = 0; j < jmax; ++j) {
            if (bi[j] == 0) continue;
            mpz_addmul(out[i + j].get_mpz_t(), ai[i].get_mpz_t(), bi[j].get_mpz_t());
        }
    }
    std::vector<Rat> res(n_out);
    for (long i = 0; i < n_out; ++i) res[i] = Rat(out[i]);
    return res;
}

std::vector<Rat> convolve_rat(const std::vector<Rat>& a, const std::vector<Rat>& b, long n_out) {
    std::vector<Rat> out(n_out);
    for (long i = 0; i < static_cast<long>(a.size()) && i < n_out; ++i) {
        if (a[i] == 0) continue;
        long jmax = std::min<long>(b.size(), n_out - i);
        for (long j = 0; j < jmax; ++j) {
            if (b[j] == 0) continue;
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

bool all_integral(const std::vector<Rat>& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& r) { return is_integer(r); });
}

}  // namespace

QSeries operator*(const QSeries& a, const QSeries& b) {
    long off = a.offset_ + b.offset_;
    // coefficient n of a*b is complete iff every split n = i+j has i,j in the
    // known windows: n - a.order <= b.offset and symmetrically
    long ord = std::min(a.order_ + b.offset_, b.order_ + a.offset_);
    long n_out = ord - off + 1;
    if (n_out <= 0) return QSeries(off, off - 1, {});
    std::vector<Rat> v = (all_integral(a.c_) && all_integral(b.c_))
                             ? convolve_int(a.c_, b.c_, n_out)
                             : convolve_rat(a.c_, b.c_, n_out);
    return QSeries(off, ord, std::move(v));
}

bool agree_to_common_order(const QSeries& a, const QSeries& b) {
    long off = std::min(a.offset_, b.offset_);
    long ord = std::min(a.order_, b.order_);
    for (long n = off; n <= ord; ++n)
        if (a.coeff(n) != b.coeff(n)) return false;
    return true;
}

QSeries compose(const QSeries& f, const QSeries& g) {
    if (!f.is_power_series() || !g.is_power_series())
        throw std::domain_error("compose: Laurent input");
    if (g.order() >= 0 && g.coeff(0) != 0) throw nonzero_inner_constant();

    const long ord = std::min(f.order(), g.order());
    if (ord < 0) return QSeries(0, ord, {});
    QSeries gg = g.truncated(ord);
    // normalize storage to offset 0
    {
        std::vector<Rat> v(ord + 1);
        for (long n = std::max(0L, gg.offset()); n <= ord; ++n) v[n] = gg.coeff(n);
        gg = QSeries(0, ord, std::move(v));
    }

    // Brent-Kung block decomposition: f(g) = sum_j B_j(g) * (g^k)^j with
    // B_j = sum_{i<k} f_{jk+i} g^i
    const long n_coeffs = ord + 1;
    const long k = std::max(1L, static_cast<long>(std::sqrt(static_cast<double>(n_coeffs))) + 1);

    std::vector<QSeries> gpow;
    gpow.reserve(k + 1);
    gpow.push_back(QSeries::constant(1, ord));
    for (long i = 1; i <= k; ++i) gpow.push_back((gpow.back() * gg).truncated(ord));

    QSeries result = QSeries::zero(ord);
    QSeries gk_power = QSeries::constant(1, ord);
    const long blocks = (n_coeffs + k - 1) / k;
    for (long j = 0; j < blocks; ++j) {
        QSeries block = QSeries::zero(ord);
        bool any = false;
        for (long i = 0; i < k; ++i) {
            long idx = j * k + i;
            if (idx > ord) break;
            const Rat& fc = f.coeff(idx);
            if (fc == 0) continue;
            block = block + fc * gpow[i];
            any = true;
        }
        if (any) result = result + (block * gk_power).truncated(ord);
        if (j + 1 < blocks) gk_power = (gk_power * gpow[k]).truncated(ord);
    }
    return result;
}

QSeries reciprocal(const QSeries& f) {
    long val = f.valuation();
    if (val > f.order()) throw zero_leading_coefficient();
    // f = X^val * u with u(0) != 0; invert the unit part
    long n = f.order() - val + 1;  // known coefficients of u
    std::vector<Rat> u(n);
    for (long i = 0; i < n; ++i) u[i] = f.coeff(val + i);
    std::vector<Rat> w(n);
    w[0] = 1 / u[0];
    for (long m = 1; m < n; ++m) {
        Rat acc;
        for (long i = 1; i <= m; ++i) acc += u[i] * w[m - i];
        w[m] = -acc / u[0];
    }
    return QSeries(-val, n - 1 - val, std::move(w));
}

QSeries sqrt_one(const QSeries& f) {
    if (!f.is_power_series() || f.order() < 0 || f.coeff(0) != 1) throw bad_constant_term();
    long n = f.order() + 1;
    std::vector<Rat> g(n);
    g[0] = 1;
    for (long m = 1; m < n; ++m) {
        Rat acc;
        for (long i = 1; i < m; ++i) acc += g[i] * g[m - i];
        g[m] = (f.coeff(m) - acc) / 2;
    }
    return QSeries(0, n - 1, std::move(g));
}

QSeries derivative(const QSeries& f) {
    long off = f.offset() < 0 ? f.offset() - 1 : std::max(0L, f.offset() - 1);
    long ord = f.order() - 1;
    if (ord < off - 1) return QSeries(off, off - 1, {});
    std::vector<Rat> v(ord - off + 1);
    for (long m = off; m <= ord; ++m) v[m - off] = Rat(m + 1) * f.coeff(m + 1);
    return QSeries(off, ord, std::move(v));
}

QSeries comp_inverse(const QSeries& f) {
    if (!f.is_power_series() || f.order() < 1 || (f.order() >= 0 && f.coeff(0) != 0))
        throw not_invertible("comp_inverse: need f(0) = 0");
    const Rat& f1 = f.coeff(1);
    if (f1 == 0) throw not_invertible("comp_inverse: need f'(0) invertible");

    const long ord = f.order();
    // Newton: g <- g - (f(g) - X)/f'(g), doubling the certified order each pass
    long cur = 1;
    QSeries g = QSeries::monomial(1 / f1, 1, 1);
    while (cur < ord) {
        cur = std::min(2 * cur, ord);
        QSeries gc = g.truncated(cur);
        {
            std::vector<Rat> v(cur + 1);
            for (long n = std::max(0L, gc.offset()); n <= gc.order(); ++n) v[n] = gc.coeff(n);
            gc = QSeries(0, cur, std::move(v));
        }
        // the residual f(g)-X has valuation beyond the previous certified
        // order; rebasing it keeps the full order through the division
        QSeries num = (compose(f.truncated(cur), gc) - QSeries::x(cur)).tight();
        QSeries den = compose(derivative(f).truncated(cur), gc);
        g = (gc - num * reciprocal(den)).truncated(cur);
    }
    return g.truncated(ord);
}

Rat QSeries::eval_rat(const Rat& x) const {
    if (offset_ < 0) {
        for (long n = offset_; n < 0; ++n)
            if (coeff(n) != 0) throw std::domain_error("eval_rat: Laurent series");
    }
    Rat acc;
    for (long n = order_; n >= std::max(0L, offset_); --n) acc = acc * x + coeff(n);
    return acc;
}

void write_series(std::ostream& os, const QSeries& s) {
    os << "QSERIES v1 offset=" << s.offset() << " order=" << s.order() << "\n";
    for (long n = s.offset(); n <= s.order(); ++n)
        os << rat_to_string_explicit(s.coeff(n)) << "\n";
}

QSeries read_series(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) throw series_parse_error("missing header");
    long offset = 0, order = 0;
    if (std::sscanf(header.c_str(), "QSERIES v1 offset=%ld order=%ld", &offset, &order) != 2)
        throw series_parse_error("bad header: " + header);
    std::vector<Rat> v;
    v.reserve(order - offset + 1);
    std::string line;
    for (long n = offset; n <= order; ++n) {
        if (!std::getline(is, line)) throw series_parse_error("truncated coefficient list");
        auto r = rat_from_string(line);
        if (!r) throw series_parse_error("bad coefficient: " + line);
        v.push_back(*r);
    }
    return QSeries(offset, order, std::move(v));
}

void save_series_file(const std::string& path, const QSeries& s) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for write: " + path);
    write_series(os, s);
}

QSeries load_series_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open for read: " + path);
    return read_series(is);
}

}  // namespace gflab
