#include "gflab/ball.hpp"

#include <sstream>

namespace gflab {

namespace {
constexpr mpfr_prec_t kRadPrec = 64;
}

RealBall::RealBall(mpfr_prec_t prec) : prec_(prec) {
    mpfr_init2(mid_, prec_);
    mpfr_init2(rad_, kRadPrec);
    mpfr_set_zero(mid_, 1);
    mpfr_set_zero(rad_, 1);
}

RealBall::RealBall(const RealBall& o) : prec_(o.prec_) {
    mpfr_init2(mid_, prec_);
    mpfr_init2(rad_, kRadPrec);
    mpfr_set(mid_, o.mid_, MPFR_RNDN);
    mpfr_set(rad_, o.rad_, MPFR_RNDU);
}

RealBall::RealBall(RealBall&& o) noexcept : prec_(o.prec_) {
    mpfr_init2(mid_, 2);
    mpfr_init2(rad_, 2);
    mpfr_swap(mid_, o.mid_);
    mpfr_swap(rad_, o.rad_);
    std::swap(prec_, o.prec_);
}

RealBall& RealBall::operator=(const RealBall& o) {
    if (this != &o) {
        prec_ = o.prec_;
        mpfr_set_prec(mid_, prec_);
        mpfr_set(mid_, o.mid_, MPFR_RNDN);
        mpfr_set(rad_, o.rad_, MPFR_RNDU);
    }
    return *this;
}

RealBall& RealBall::operator=(RealBall&& o) noexcept {
    mpfr_swap(mid_, o.mid_);
    mpfr_swap(rad_, o.rad_);
    std::swap(prec_, o.prec_);
    return *this;
}

RealBall::~RealBall() {
    mpfr_clear(mid_);
    mpfr_clear(rad_);
}

void RealBall::bump_radius_ulp() {
    if (mpfr_zero_p(mid_) || !mpfr_regular_p(mid_)) return;
    mpfr_t ulp;
    mpfr_init2(ulp, kRadPrec);
    mpfr_set_ui_2exp(ulp, 1, mpfr_get_exp(mid_) - prec_, MPFR_RNDU);
    mpfr_add(rad_, rad_, ulp, MPFR_RNDU);
    mpfr_clear(ulp);
}

RealBall RealBall::exact(const Rat& x, mpfr_prec_t prec) {
    RealBall r(prec);
    mpfr_set_q(r.mid_, x.get_mpq_t(), MPFR_RNDN);
    r.bump_radius_ulp();
    // exact dyadics round without error; cheap to detect and keep tight
    mpfr_t back_num;
    mpfr_init2(back_num, prec);
    mpfr_set_q(back_num, x.get_mpq_t(), MPFR_RNDU);
    if (mpfr_equal_p(back_num, r.mid_)) {
        mpfr_set_q(back_num, x.get_mpq_t(), MPFR_RNDD);
        if (mpfr_equal_p(back_num, r.mid_)) mpfr_set_zero(r.rad_, 1);
    }
    mpfr_clear(back_num);
    return r;
}

RealBall RealBall::exact_int(long x, mpfr_prec_t prec) {
    RealBall r(prec);
    mpfr_set_si(r.mid_, x, MPFR_RNDN);
    return r;
}

RealBall RealBall::pi(mpfr_prec_t prec) {
    RealBall r(prec);
    mpfr_const_pi(r.mid_, MPFR_RNDN);
    r.bump_radius_ulp();
    return r;
}

RealBall RealBall::from_endpoints(const mpfr_t lo, const mpfr_t hi, mpfr_prec_t prec) {
    RealBall r(prec);
    mpfr_add(r.mid_, lo, hi, MPFR_RNDN);
    mpfr_div_2ui(r.mid_, r.mid_, 1, MPFR_RNDN);
    mpfr_t w;
    mpfr_init2(w, kRadPrec);
    mpfr_sub(w, hi, lo, MPFR_RNDU);
    mpfr_div_2ui(w, w, 1, MPFR_RNDU);
    mpfr_set(r.rad_, w, MPFR_RNDU);
    mpfr_clear(w);
    r.bump_radius_ulp();
    r.bump_radius_ulp();  // covers midpoint rounding in both steps
    return r;
}

RealBall operator+(const RealBall& a, const RealBall& b) {
    RealBall r(std::max(a.prec_, b.prec_));
    mpfr_add(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
    mpfr_add(r.rad_, a.rad_, b.rad_, MPFR_RNDU);
    r.bump_radius_ulp();
    return r;
}

RealBall operator-(const RealBall& a, const RealBall& b) {
    RealBall r(std::max(a.prec_, b.prec_));
    mpfr_sub(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
    mpfr_add(r.rad_, a.rad_, b.rad_, MPFR_RNDU);
    r.bump_radius_ulp();
    return r;
}

RealBall RealBall::operator-() const {
    RealBall r = *this;
    mpfr_neg(r.mid_, r.mid_, MPFR_RNDN);
    return r;
}

RealBall operator*(const RealBall& a, const RealBall& b) {
    RealBall r(std::max(a.prec_, b.prec_));
    mpfr_mul(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
    // |a||rb| + |b||ra| + ra rb, all upward
    mpfr_t t, u;
    mpfr_init2(t, kRadPrec);
    mpfr_init2(u, kRadPrec);
    mpfr_abs(t, a.mid_, MPFR_RNDU);
    mpfr_mul(t, t, b.rad_, MPFR_RNDU);
    mpfr_add(r.rad_, r.rad_, t, MPFR_RNDU);
    mpfr_abs(u, b.mid_, MPFR_RNDU);
    mpfr_mul(u, u, a.rad_, MPFR_RNDU);
    mpfr_add(r.rad_, r.rad_, u, MPFR_RNDU);
    mpfr_mul(t, a.rad_, b.rad_, MPFR_RNDU);
    mpfr_add(r.rad_, r.rad_, t, MPFR_RNDU);
    mpfr_clear(t);
    mpfr_clear(u);
    r.bump_radius_ulp();
    return r;
}

RealBall RealBall::square() const { return *this * *this; }

RealBall operator/(const RealBall& a, const RealBall& b) {
    // 1/b with a lower bound on |b|, then multiply
    RealBall binv(b.prec_);
    mpfr_t lb;
    mpfr_init2(lb, kRadPrec);
    mpfr_abs(lb, b.mid_, MPFR_RNDD);
    mpfr_sub(lb, lb, b.rad_, MPFR_RNDD);
    if (!(mpfr_sgn(lb) > 0)) {
        mpfr_clear(lb);
        throw std::domain_error("RealBall division: denominator interval contains zero");
    }
    mpfr_ui_div(binv.mid_, 1, b.mid_, MPFR_RNDN);
    // |1/b - 1/mb| <= rb / (|mb| * lb)
    mpfr_t t;
    mpfr_init2(t, kRadPrec);
    mpfr_abs(t, b.mid_, MPFR_RNDD);
    mpfr_mul(t, t, lb, MPFR_RNDD);
    mpfr_t rerr;
    mpfr_init2(rerr, kRadPrec);
    mpfr_div(rerr, b.rad_, t, MPFR_RNDU);
    mpfr_set(binv.rad_, rerr, MPFR_RNDU);
    binv.bump_radius_ulp();
    mpfr_clear(rerr);
    mpfr_clear(t);
    mpfr_clear(lb);
    return a * binv;
}

namespace {
// endpoint application of a monotone increasing mpfr function
template <typename F>
RealBall monotone_endpoint(const RealBall& x, mpfr_prec_t prec, F&& f) {
    mpfr_t lo, hi, flo, fhi;
    mpfr_init2(lo, prec);
    mpfr_init2(hi, prec);
    mpfr_init2(flo, prec);
    mpfr_init2(fhi, prec);
    mpfr_sub(lo, x.mid(), x.rad(), MPFR_RNDD);
    mpfr_add(hi, x.mid(), x.rad(), MPFR_RNDU);
    f(flo, lo, MPFR_RNDD);
    f(fhi, hi, MPFR_RNDU);
    RealBall r = RealBall::from_endpoints(flo, fhi, prec);
    mpfr_clears(lo, hi, flo, fhi, nullptr);
    return r;
}
}  // namespace

RealBall RealBall::sqrt() const {
    mpfr_t lo;
    mpfr_init2(lo, prec_);
    mpfr_sub(lo, mid_, rad_, MPFR_RNDD);
    if (mpfr_sgn(lo) < 0) mpfr_set_zero(lo, 1);
    mpfr_t hi, flo, fhi;
    mpfr_init2(hi, prec_);
    mpfr_init2(flo, prec_);
    mpfr_init2(fhi, prec_);
    mpfr_add(hi, mid_, rad_, MPFR_RNDU);
    if (mpfr_sgn(hi) < 0)
        throw std::domain_error("RealBall::sqrt of a negative enclosure");
    mpfr_sqrt(flo, lo, MPFR_RNDD);
    mpfr_sqrt(fhi, hi, MPFR_RNDU);
    RealBall r = RealBall::from_endpoints(flo, fhi, prec_);
    mpfr_clears(lo, hi, flo, fhi, nullptr);
    return r;
}

RealBall RealBall::exp() const {
    return monotone_endpoint(*this, prec_, [](mpfr_t out, const mpfr_t in, mpfr_rnd_t rnd) {
        mpfr_exp(out, in, rnd);
    });
}

RealBall RealBall::log() const {
    mpfr_t lo;
    mpfr_init2(lo, prec_);
    mpfr_sub(lo, mid_, rad_, MPFR_RNDD);
    bool ok = mpfr_sgn(lo) > 0;
    mpfr_clear(lo);
    if (!ok) throw std::domain_error("RealBall::log needs a positive enclosure");
    return monotone_endpoint(*this, prec_, [](mpfr_t out, const mpfr_t in, mpfr_rnd_t rnd) {
        mpfr_log(out, in, rnd);
    });
}

RealBall RealBall::abs() const {
    RealBall r = *this;
    if (contains_zero()) {
        // [0, |mid|+rad]
        mpfr_t hi, z;
        mpfr_init2(hi, prec_);
        mpfr_init2(z, prec_);
        mpfr_abs(hi, mid_, MPFR_RNDU);
        mpfr_add(hi, hi, rad_, MPFR_RNDU);
        mpfr_set_zero(z, 1);
        RealBall res = RealBall::from_endpoints(z, hi, prec_);
        mpfr_clears(hi, z, nullptr);
        return res;
    }
    mpfr_abs(r.mid_, r.mid_, MPFR_RNDN);
    return r;
}

RealBall RealBall::agm(const RealBall& a, const RealBall& b) {
    mpfr_prec_t prec = std::max(a.prec_, b.prec_);
    mpfr_t alo, ahi, blo, bhi, flo, fhi;
    mpfr_inits2(prec, alo, ahi, blo, bhi, flo, fhi, nullptr);
    mpfr_sub(alo, a.mid_, a.rad_, MPFR_RNDD);
    mpfr_add(ahi, a.mid_, a.rad_, MPFR_RNDU);
    mpfr_sub(blo, b.mid_, b.rad_, MPFR_RNDD);
    mpfr_add(bhi, b.mid_, b.rad_, MPFR_RNDU);
    if (mpfr_sgn(alo) <= 0 || mpfr_sgn(blo) <= 0) {
        mpfr_clears(alo, ahi, blo, bhi, flo, fhi, nullptr);
        throw std::domain_error("RealBall::agm needs positive enclosures");
    }
    mpfr_agm(flo, alo, blo, MPFR_RNDD);
    mpfr_agm(fhi, ahi, bhi, MPFR_RNDU);
    RealBall r = RealBall::from_endpoints(flo, fhi, prec);
    mpfr_clears(alo, ahi, blo, bhi, flo, fhi, nullptr);
    return r;
}

bool RealBall::contains_zero() const {
    mpfr_t t;
    mpfr_init2(t, kRadPrec);
    mpfr_abs(t, mid_, MPFR_RNDU);
    bool in = mpfr_cmp(t, rad_) <= 0;
    mpfr_clear(t);
    return in;
}

bool RealBall::contains(const Rat& q) const {
    // sup |mid - q| <= rad certifies containment
    mpfr_t d1, d2;
    mpfr_init2(d1, prec_ + 64);
    mpfr_init2(d2, prec_ + 64);
    mpfr_sub_q(d1, mid_, q.get_mpq_t(), MPFR_RNDU);
    mpfr_abs(d1, d1, MPFR_RNDU);
    mpfr_sub_q(d2, mid_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_abs(d2, d2, MPFR_RNDU);
    if (mpfr_cmp(d2, d1) > 0) mpfr_swap(d1, d2);
    bool in = mpfr_cmp(d1, rad_) <= 0;
    mpfr_clears(d1, d2, nullptr);
    return in;
}

bool RealBall::definitely_positive() const {
    mpfr_t lo;
    mpfr_init2(lo, kRadPrec);
    mpfr_sub(lo, mid_, rad_, MPFR_RNDD);
    bool pos = mpfr_sgn(lo) > 0;
    mpfr_clear(lo);
    return pos;
}

bool RealBall::definitely_negative() const { return (-*this).definitely_positive(); }

bool RealBall::is_finite() const { return mpfr_number_p(mid_) && mpfr_number_p(rad_); }

RealBall RealBall::abs_upper_bound() const {
    RealBall r(prec_);
    mpfr_abs(r.mid_, mid_, MPFR_RNDU);
    mpfr_add(r.mid_, r.mid_, rad_, MPFR_RNDU);
    return r;
}

RealBall RealBall::abs_lower_bound() const {
    RealBall r(prec_);
    mpfr_abs(r.mid_, mid_, MPFR_RNDD);
    mpfr_sub(r.mid_, r.mid_, rad_, MPFR_RNDD);
    if (mpfr_sgn(r.mid_) < 0) mpfr_set_zero(r.mid_, 1);
    return r;
}

Rat RealBall::rad_as_rat() const {
    if (mpfr_zero_p(rad_)) return Rat(0);
    mpq_t q;
    mpq_init(q);
    mpfr_get_q(q, rad_);
    Rat r(q);
    mpq_clear(q);
    return r;
}

Rat RealBall::mid_as_rat() const {
    if (mpfr_zero_p(mid_)) return Rat(0);
    mpq_t q;
    mpq_init(q);
    mpfr_get_q(q, mid_);
    Rat r(q);
    mpq_clear(q);
    return r;
}

void RealBall::add_error(const RealBall& extra) {
    RealBall u = extra.abs_upper_bound();
    mpfr_add(rad_, rad_, u.mid_, MPFR_RNDU);
}

std::string RealBall::to_string(size_t digits) const {
    char* m = nullptr;
    char* r = nullptr;
    mpfr_asprintf(&m, "%.*Rg", static_cast<int>(digits), mid_);
    mpfr_asprintf(&r, "%.3Rg", rad_);
    std::string s = std::string(m) + " +/- " + r;
    mpfr_free_str(m);
    mpfr_free_str(r);
    return s;
}

// ---------------------------------------------------------------- complex

ComplexBall::ComplexBall(mpfr_prec_t prec) : prec_(prec), re_(prec), im_(prec), rad_(kRadPrec) {}

ComplexBall::ComplexBall(const RealBall& re, const RealBall& im)
    : prec_(std::max(re.prec(), im.prec())), re_(re), im_(im), rad_(kRadPrec) {
    mpfr_add(rad_.mid_, re.rad(), im.rad(), MPFR_RNDU);
    mpfr_set_zero(re_.rad_, 1);
    mpfr_set_zero(im_.rad_, 1);
}

ComplexBall ComplexBall::exact(const Rat& re, const Rat& im, mpfr_prec_t prec) {
    return ComplexBall(RealBall::exact(re, prec), RealBall::exact(im, prec));
}

RealBall ComplexBall::real_part() const {
    RealBall r = re_;
    mpfr_add(r.rad_, r.rad_, rad_.mid_, MPFR_RNDU);
    return r;
}

RealBall ComplexBall::imag_part() const {
    RealBall r = im_;
    mpfr_add(r.rad_, r.rad_, rad_.mid_, MPFR_RNDU);
    return r;
}

RealBall ComplexBall::component_slack(const RealBall& x) {
    RealBall s(kRadPrec);
    if (!mpfr_zero_p(x.mid_) && mpfr_regular_p(x.mid_))
        mpfr_set_ui_2exp(s.mid_, 1, mpfr_get_exp(x.mid_) - x.prec_, MPFR_RNDU);
    return s;
}

ComplexBall operator+(const ComplexBall& a, const ComplexBall& b) {
    ComplexBall r(std::max(a.prec_, b.prec_));
    mpfr_add(r.re_.mid_, a.re_.mid_, b.re_.mid_, MPFR_RNDN);
    mpfr_add(r.im_.mid_, a.im_.mid_, b.im_.mid_, MPFR_RNDN);
    mpfr_add(r.rad_.mid_, a.rad_.mid_, b.rad_.mid_, MPFR_RNDU);
    RealBall s1 = ComplexBall::component_slack(r.re_), s2 = ComplexBall::component_slack(r.im_);
    mpfr_add(r.rad_.mid_, r.rad_.mid_, s1.mid_, MPFR_RNDU);
    mpfr_add(r.rad_.mid_, r.rad_.mid_, s2.mid_, MPFR_RNDU);
    return r;
}

ComplexBall ComplexBall::operator-() const {
    ComplexBall r = *this;
    mpfr_neg(r.re_.mid_, r.re_.mid_, MPFR_RNDN);
    mpfr_neg(r.im_.mid_, r.im_.mid_, MPFR_RNDN);
    return r;
}

ComplexBall ComplexBall::conj() const {
    ComplexBall r = *this;
    mpfr_neg(r.im_.mid_, r.im_.mid_, MPFR_RNDN);
    return r;
}

ComplexBall operator-(const ComplexBall& a, const ComplexBall& b) { return a + (-b); }

RealBall ComplexBall::abs_upper() const {
    RealBall r(prec_);
    mpfr_hypot(r.mid_, re_.mid_, im_.mid_, MPFR_RNDU);
    r.bump_radius_ulp();
    mpfr_add(r.mid_, r.mid_, rad_.mid_, MPFR_RNDU);
    RealBall u = r.abs_upper_bound();
    return u;
}

RealBall ComplexBall::abs_lower() const {
    RealBall r(prec_);
    mpfr_hypot(r.mid_, re_.mid_, im_.mid_, MPFR_RNDD);
    mpfr_sub(r.mid_, r.mid_, rad_.mid_, MPFR_RNDD);
    mpfr_t ulp;
    mpfr_init2(ulp, kRadPrec);
    mpfr_set_ui_2exp(ulp, 1, mpfr_regular_p(r.mid_) ? mpfr_get_exp(r.mid_) - prec_ : -prec_, MPFR_RNDU);
    mpfr_sub(r.mid_, r.mid_, ulp, MPFR_RNDD);
    mpfr_clear(ulp);
    if (mpfr_sgn(r.mid_) < 0) mpfr_set_zero(r.mid_, 1);
    return r;
}

bool ComplexBall::contains_zero() const {
    RealBall lo = abs_lower();
    return mpfr_zero_p(lo.mid()) != 0;
}

void ComplexBall::add_error(const RealBall& extra) {
    RealBall u = extra.abs_upper_bound();
    mpfr_add(rad_.mid_, rad_.mid_, u.mid(), MPFR_RNDU);
}

ComplexBall operator*(const ComplexBall& a, const ComplexBall& b) {
    ComplexBall r(std::max(a.prec_, b.prec_));
    // correctly rounded fused forms keep the error at half an ulp of the
    // result even under cancellation
    mpfr_fmms(r.re_.mid_, a.re_.mid_, b.re_.mid_, a.im_.mid_, b.im_.mid_, MPFR_RNDN);
    mpfr_fmma(r.im_.mid_, a.re_.mid_, b.im_.mid_, a.im_.mid_, b.re_.mid_, MPFR_RNDN);

    // |a| rb + |b| ra + ra rb, with a few ulps for the midpoint products
    RealBall ua = a.abs_upper(), ub = b.abs_upper();
    mpfr_t acc, t;
    mpfr_init2(acc, kRadPrec);
    mpfr_init2(t, kRadPrec);
    mpfr_mul(acc, ua.mid(), b.rad_.mid_, MPFR_RNDU);
    mpfr_mul(t, ub.mid(), a.rad_.mid_, MPFR_RNDU);
    mpfr_add(acc, acc, t, MPFR_RNDU);
    mpfr_mul(t, a.rad_.mid_, b.rad_.mid_, MPFR_RNDU);
    mpfr_add(acc, acc, t, MPFR_RNDU);
    RealBall s1 = ComplexBall::component_slack(r.re_), s2 = ComplexBall::component_slack(r.im_);
    mpfr_add(acc, acc, s1.mid(), MPFR_RNDU);
    mpfr_add(acc, acc, s2.mid(), MPFR_RNDU);
    mpfr_add(acc, acc, s1.mid(), MPFR_RNDU);  // two rounded products feed each component
    mpfr_add(acc, acc, s2.mid(), MPFR_RNDU);
    mpfr_set(r.rad_.mid_, acc, MPFR_RNDU);
    mpfr_clears(acc, t, nullptr);
    return r;
}

ComplexBall operator/(const ComplexBall& a, const ComplexBall& b) {
    // 1/b = conj(b)/|b|^2 on midpoints; error via lower bound of |b|
    RealBall lb = b.abs_lower();
    if (mpfr_zero_p(lb.mid()))
        throw std::domain_error("ComplexBall division: denominator encloses zero");
    ComplexBall binv(b.prec_);
    mpfr_t n2, t;
    mpfr_inits2(b.prec_, n2, t, nullptr);
    mpfr_fmma(n2, b.re_.mid_, b.re_.mid_, b.im_.mid_, b.im_.mid_, MPFR_RNDN);
    mpfr_div(binv.re_.mid_, b.re_.mid_, n2, MPFR_RNDN);
    mpfr_div(binv.im_.mid_, b.im_.mid_, n2, MPFR_RNDN);
    mpfr_neg(binv.im_.mid_, binv.im_.mid_, MPFR_RNDN);
    // |1/z - 1/mb| <= rb/(|mb| lb); |mb| >= lb
    mpfr_t err;
    mpfr_init2(err, kRadPrec);
    mpfr_mul(err, lb.mid(), lb.mid(), MPFR_RNDD);
    if (mpfr_sgn(err) <= 0) {
        mpfr_clears(n2, t, err, nullptr);
        throw std::domain_error("ComplexBall division: denominator too small");
    }
    mpfr_div(err, b.rad_.mid_, err, MPFR_RNDU);
    mpfr_add(binv.rad_.mid_, binv.rad_.mid_, err, MPFR_RNDU);
    RealBall s1 = ComplexBall::component_slack(binv.re_), s2 = ComplexBall::component_slack(binv.im_);
    mpfr_add(binv.rad_.mid_, binv.rad_.mid_, s1.mid(), MPFR_RNDU);
    mpfr_add(binv.rad_.mid_, binv.rad_.mid_, s2.mid(), MPFR_RNDU);
    mpfr_add(binv.rad_.mid_, binv.rad_.mid_, s1.mid(), MPFR_RNDU);
    mpfr_add(binv.rad_.mid_, binv.rad_.mid_, s2.mid(), MPFR_RNDU);
    mpfr_clears(n2, t, err, nullptr);
    return a * binv;
}

std::string ComplexBall::to_string(size_t digits) const {
    char* re = nullptr;
    char* im = nullptr;
    char* rr = nullptr;
    mpfr_asprintf(&re, "%.*Rg", static_cast<int>(digits), re_.mid_);
    mpfr_asprintf(&im, "%.*Rg", static_cast<int>(digits), im_.mid_);
    mpfr_asprintf(&rr, "%.3Rg", rad_.mid_);
    std::string s = std::string("(") + re + " + " + im + "i) +/- " + rr;
    mpfr_free_str(re);
    mpfr_free_str(im);
    mpfr_free_str(rr);
    return s;
}

}  // namespace gflab
