#include "line_act/real.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <utility>

#include "line_act/error.hpp"

namespace lineact {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::PrecisionExhausted: return "precision-exhausted";
    case ErrorCode::WindowDegenerate: return "window-degenerate";
    case ErrorCode::UnknownGenerator: return "unknown-generator";
    case ErrorCode::UnsupportedPresentation: return "unsupported-presentation";
    case ErrorCode::UnknownGalleryName: return "unknown-gallery-name";
    case ErrorCode::BadParameter: return "bad-parameter";
    case ErrorCode::HorizonExceeded: return "horizon-exceeded";
    case ErrorCode::NotApplicable: return "not-applicable";
    case ErrorCode::ConstructionFailed: return "construction-failed";
    case ErrorCode::NoMovingPair: return "no-moving-pair";
    case ErrorCode::Parse: return "parse-error";
    case ErrorCode::Domain: return "domain-error";
  }
  return "error";
}

namespace {

struct ThreadState {
  Precision precision = kDefaultPrecision;
  ThreadState() {
    // The exponent range is thread-local in MPFR; open it fully so that the
    // extreme powers produced by ladder maps neither overflow nor underflow.
    mpfr_set_emin(mpfr_get_emin_min());
    mpfr_set_emax(mpfr_get_emax_max());
  }
};

ThreadState& thread_state() {
  thread_local ThreadState state;
  return state;
}

}  // namespace

Precision working_precision() { return thread_state().precision; }

PrecisionScope::PrecisionScope(Precision bits) : saved_(thread_state().precision) {
  if (bits < MPFR_PREC_MIN) {
    throw Error(ErrorCode::BadParameter, "precision must be at least 2 bits");
  }
  thread_state().precision = bits;
}

PrecisionScope::~PrecisionScope() { thread_state().precision = saved_; }

// ---------------------------------------------------------------- BigFloat

BigFloat::BigFloat(Precision bits) {
  mpfr_init2(value_, static_cast<mpfr_prec_t>(bits));
  mpfr_set_zero(value_, 1);
  live_ = true;
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
  live_ = true;
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  std::memcpy(value_, other.value_, sizeof(mpfr_t));
  live_ = other.live_;
  other.live_ = false;
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this == &other) return *this;
  if (!live_) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    live_ = true;
  } else if (mpfr_get_prec(value_) != mpfr_get_prec(other.value_)) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
  }
  mpfr_set(value_, other.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  if (this == &other) return *this;
  if (live_) mpfr_clear(value_);
  std::memcpy(value_, other.value_, sizeof(mpfr_t));
  live_ = other.live_;
  other.live_ = false;
  return *this;
}

BigFloat::~BigFloat() {
  if (live_) mpfr_clear(value_);
}

BigFloat BigFloat::from_rational(const mpq_class& q, mpfr_rnd_t rnd, Precision bits) {
  BigFloat r(bits);
  mpfr_set_q(r.get(), q.get_mpq_t(), rnd);
  return r;
}

BigFloat BigFloat::from_long(long v, Precision bits) {
  BigFloat r(bits);
  mpfr_set_si(r.get(), v, MPFR_RNDN);
  return r;
}

mpq_class BigFloat::to_rational() const {
  if (!is_finite()) throw Error(ErrorCode::Domain, "non-finite value has no rational form");
  mpq_class q;
  if (mpfr_zero_p(value_)) return q;
  mpz_class mant;
  const mpfr_exp_t exp = mpfr_get_z_2exp(mant.get_mpz_t(), value_);
  q = mant;
  if (exp >= 0) {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(exp));
  } else {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-exp));
  }
  q.canonicalize();
  return q;
}

// ---------------------------------------------------------------- RealNum

namespace {

using Bounds = RealNum::Bounds;

BigFloat rounded(const BigFloat& x, mpfr_rnd_t rnd, Precision bits) {
  if (x.precision() <= bits) return x;
  BigFloat r(bits);
  mpfr_set(r.get(), x.get(), rnd);
  return r;
}

Bounds bounds_of(const RealNum& x) {
  if (x.is_exact()) {
    const Precision p = working_precision();
    return {BigFloat::from_rational(x.rational(), MPFR_RNDD, p),
            BigFloat::from_rational(x.rational(), MPFR_RNDU, p)};
  }
  return x.bounds();
}

const BigFloat& min_of(const BigFloat& a, const BigFloat& b) { return a.compare(b) <= 0 ? a : b; }
const BigFloat& max_of(const BigFloat& a, const BigFloat& b) { return a.compare(b) >= 0 ? a : b; }

template <typename Fn>
BigFloat apply_rounded(Fn&& fn, mpfr_rnd_t rnd) {
  BigFloat r(working_precision());
  fn(r.get(), rnd);
  return r;
}

mpq_class parse_decimal(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_digit = false;
  bool seen_point = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      seen_digit = true;
      if (seen_point) ++frac_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw Error(ErrorCode::Parse, "malformed number '" + std::string(text) + "'");
  long exponent = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    const std::string rest(text.substr(i));
    if (rest.empty()) throw Error(ErrorCode::Parse, "malformed exponent in '" + std::string(text) + "'");
    std::size_t used = 0;
    try {
      exponent = std::stol(rest, &used);
    } catch (const std::exception&) {
      throw Error(ErrorCode::Parse, "malformed exponent in '" + std::string(text) + "'");
    }
    i += used;
  }
  if (i != text.size()) throw Error(ErrorCode::Parse, "malformed number '" + std::string(text) + "'");
  mpz_class mant(digits, 10);
  const long shift = exponent - frac_digits;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(shift)));
  mpq_class q = shift >= 0 ? mpq_class(mant * scale) : mpq_class(mant, scale);
  q.canonicalize();
  return negative ? mpq_class(-q) : q;
}

mpq_class parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  const mpq_class num = parse_decimal(text.substr(0, slash));
  const mpq_class den = parse_decimal(text.substr(slash + 1));
  if (sgn(den) == 0) throw Error(ErrorCode::Parse, "zero denominator in '" + std::string(text) + "'");
  mpq_class q = num / den;
  q.canonicalize();
  return q;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool fits_small(const mpz_class& z, long limit) { return abs(z) <= limit; }

}  // namespace

RealNum::RealNum(mpq_class q) : value_(std::move(q)) { std::get<mpq_class>(value_).canonicalize(); }

RealNum RealNum::rational(long num, long den) {
  if (den == 0) throw Error(ErrorCode::Domain, "zero denominator");
  return RealNum(mpq_class(num, den));
}

RealNum RealNum::from_bounds(BigFloat lo, BigFloat hi) {
  if (!lo.is_finite() && !hi.is_finite()) {
    throw Error(ErrorCode::PrecisionExhausted, "enclosure lost all information");
  }
  if (mpfr_nan_p(lo.get()) || mpfr_nan_p(hi.get())) {
    throw Error(ErrorCode::Domain, "NaN in enclosure");
  }
  if (lo.compare(hi) > 0) std::swap(lo, hi);
  return RealNum(Bounds{std::move(lo), std::move(hi)});
}

RealNum RealNum::point(const BigFloat& x) { return from_bounds(x, x); }

std::optional<RealNum> RealNum::named_constant(std::string_view name, Precision bits) {
  auto make = [bits](auto&& fn) {
    BigFloat lo(bits);
    BigFloat hi(bits);
    fn(lo.get(), MPFR_RNDD);
    fn(hi.get(), MPFR_RNDU);
    return RealNum::from_bounds(std::move(lo), std::move(hi));
  };
  if (name == "sqrt2") return make([](mpfr_ptr r, mpfr_rnd_t d) { mpfr_sqrt_ui(r, 2, d); });
  if (name == "sqrt3") return make([](mpfr_ptr r, mpfr_rnd_t d) { mpfr_sqrt_ui(r, 3, d); });
  if (name == "pi") return make([](mpfr_ptr r, mpfr_rnd_t d) { mpfr_const_pi(r, d); });
  if (name == "e") {
    return make([](mpfr_ptr r, mpfr_rnd_t d) {
      mpfr_set_ui(r, 1, MPFR_RNDN);
      mpfr_exp(r, r, d);
    });
  }
  return std::nullopt;
}

RealNum RealNum::parse(std::string_view raw, Precision bits) {
  const std::string_view text = trim(raw);
  if (text.empty()) throw Error(ErrorCode::Parse, "empty number");
  if (auto c = named_constant(text, bits)) return *c;
  if (text.front() == '-' && text.size() > 1) {
    if (auto c = named_constant(text.substr(1), bits)) return -*c;
  }
  std::size_t sep = text.find("\xC2\xB1");
  std::size_t sep_len = 2;
  if (sep == std::string_view::npos) {
    sep = text.find("+-");
    sep_len = 2;
  }
  if (sep != std::string_view::npos) {
    const mpq_class mid = parse_rational(trim(text.substr(0, sep)));
    const mpq_class err = abs(parse_rational(trim(text.substr(sep + sep_len))));
    return from_bounds(BigFloat::from_rational(mid - err, MPFR_RNDD, bits),
                       BigFloat::from_rational(mid + err, MPFR_RNDU, bits));
  }
  return RealNum(parse_rational(text));
}

BigFloat RealNum::lower(Precision bits) const {
  if (is_exact()) return BigFloat::from_rational(rational(), MPFR_RNDD, bits);
  return rounded(bounds().lo, MPFR_RNDD, bits);
}

BigFloat RealNum::upper(Precision bits) const {
  if (is_exact()) return BigFloat::from_rational(rational(), MPFR_RNDU, bits);
  return rounded(bounds().hi, MPFR_RNDU, bits);
}

BigFloat RealNum::midpoint() const {
  if (is_exact()) return BigFloat::from_rational(rational(), MPFR_RNDN, working_precision());
  const auto& b = bounds();
  const Precision p = std::max(b.lo.precision(), b.hi.precision()) + 1;
  BigFloat m(p);
  mpfr_add(m.get(), b.lo.get(), b.hi.get(), MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  return m;
}

BigFloat RealNum::error() const {
  BigFloat e(64);
  if (is_exact()) return e;
  const auto& b = bounds();
  mpfr_sub(e.get(), b.hi.get(), b.lo.get(), MPFR_RNDU);
  mpfr_div_2ui(e.get(), e.get(), 1, MPFR_RNDU);
  return e;
}

double RealNum::error_double() const { return mpfr_get_d(error().get(), MPFR_RNDU); }

double RealNum::to_double() const {
  if (is_exact()) return rational().get_d();
  return midpoint().to_double();
}

mpq_class RealNum::midpoint_rational() const {
  if (is_exact()) return rational();
  return midpoint().to_rational();
}

bool RealNum::is_point() const { return is_exact() || bounds().lo.compare(bounds().hi) == 0; }

bool RealNum::certainly_positive() const {
  if (is_exact()) return sgn(rational()) > 0;
  return bounds().lo.sign() > 0;
}

bool RealNum::certainly_negative() const {
  if (is_exact()) return sgn(rational()) < 0;
  return bounds().hi.sign() < 0;
}

std::string RealNum::to_string() const {
  if (is_exact()) return rational().get_str();
  const BigFloat mid = midpoint();
  const BigFloat err = error();
  if (!mid.is_finite()) return mid.sign() > 0 ? "inf" : "-inf";
  const Precision p = std::max(bounds().lo.precision(), bounds().hi.precision());
  const int max_digits = static_cast<int>(p * 0.30103) + 2;
  int digits = max_digits;
  if (!err.is_zero() && !mid.is_zero()) {
    const long e_val = mpfr_get_exp(mid.get());
    const long e_err = mpfr_get_exp(err.get());
    digits = std::clamp(static_cast<int>((e_val - e_err) * 0.30103) + 4, 6, max_digits);
  } else if (!err.is_zero()) {
    digits = 6;
  }
  char* mid_text = nullptr;
  mpfr_asprintf(&mid_text, "%.*Rg", digits, mid.get());
  std::string out(mid_text);
  mpfr_free_str(mid_text);

  // Widen the printed error by the rounding of the printed midpoint.
  BigFloat slack(64);
  if (!mid.is_zero()) {
    mpfr_set_ui_2exp(slack.get(), 1, mpfr_get_exp(mid.get()) - static_cast<long>(digits * 3.3219) + 2,
                     MPFR_RNDU);
  }
  BigFloat total(64);
  mpfr_add(total.get(), err.get(), slack.get(), MPFR_RNDU);
  char* err_text = nullptr;
  mpfr_asprintf(&err_text, "%.2RUe", total.get());
  out += "\xC2\xB1";
  out += err_text;
  mpfr_free_str(err_text);
  return out;
}

bool identical(const RealNum& a, const RealNum& b) {
  if (a.is_exact() != b.is_exact()) return false;
  if (a.is_exact()) return a.rational() == b.rational();
  return a.bounds().lo.compare(b.bounds().lo) == 0 && a.bounds().hi.compare(b.bounds().hi) == 0;
}

// ---------------------------------------------------------------- arithmetic

namespace {

// Exact results larger than this many bits (numerator plus denominator) are
// replaced by enclosures; repeated squaring would otherwise grow without bound.
std::size_t exact_bit_limit() { return std::max<std::size_t>(8192, 32 * std::size_t{working_precision()}); }

std::size_t rational_bits(const mpq_class& q) {
  return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}

RealNum bounded_exact(mpq_class q) {
  if (rational_bits(q) <= exact_bit_limit()) return RealNum(std::move(q));
  return RealNum::from_bounds(BigFloat::from_rational(q, MPFR_RNDD), BigFloat::from_rational(q, MPFR_RNDU));
}

}  // namespace

RealNum operator+(const RealNum& a, const RealNum& b) {
  if (a.is_exact() && b.is_exact()) return bounded_exact(a.rational() + b.rational());
  const Bounds x = bounds_of(a);
  const Bounds y = bounds_of(b);
  return RealNum::from_bounds(
      apply_rounded([&](mpfr_ptr r, mpfr_rnd_t d) { mpfr_add(r, x.lo.get(), y.lo.get(), d); }, MPFR_RNDD),
      apply_rounded([&](mpfr_ptr r, mpfr_rnd_t d) { mpfr_add(r, x.hi.get(), y.hi.get(), d); }, MPFR_RNDU));
}

RealNum operator-(const RealNum& a, const RealNum& b) {
  if (a.is_exact() && b.is_exact()) return bounded_exact(a.rational() - b.rational());
  const Bounds x = bounds_of(a);
  const Bounds y = bounds_of(b);
  return RealNum::from_bounds(
      apply_rounded([&](mpfr_ptr r, mpfr_rnd_t d) { mpfr_sub(r, x.lo.get(), y.hi.get(), d); }, MPFR_RNDD),
      apply_rounded([&](mpfr_ptr r, mpfr_rnd_t d) { mpfr_sub(r, x.hi.get(), y.lo.get(), d); }, MPFR_RNDU));
}

RealNum operator-(const RealNum& a) {
  if (a.is_exact()) return RealNum(mpq_class(-a.rational()));
  BigFloat lo = a.bounds().hi;
  BigFloat hi = a.bounds().lo;
  mpfr_neg(lo.get(), lo.get(), MPFR_RNDN);
  mpfr_neg(hi.get(), hi.get(), MPFR_RNDN);
  return RealNum::from_bounds(std::move(lo), std::move(hi));
}

RealNum operator*(const RealNum& a, const RealNum& b) {
  if (a.is_exact() && b.is_exact()) return bounded_exact(a.rational() * b.rational());
  if (a.is_exact_zero() || b.is_exact_zero()) return RealNum();
  const Bounds x = bounds_of(a);
  const Bounds y = bounds_of(b);
  const BigFloat* xs[2] = {&x.lo, &x.hi};
  const BigFloat* ys[2] = {&y.lo, &y.hi};
  std::optional<BigFloat> lo;
  std::optional<BigFloat> hi;
  for (const BigFloat* p : xs) {
    for (const BigFloat* q : ys) {
      BigFloat d = apply_rounded([&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_mul(r, p->get(), q->get(), m); }, MPFR_RNDD);
      BigFloat u = apply_rounded([&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_mul(r, p->get(), q->get(), m); }, MPFR_RNDU);
      if (!lo || d.compare(*lo) < 0) lo = std::move(d);
      if (!hi || u.compare(*hi) > 0) hi = std::move(u);
    }
  }
  return RealNum::from_bounds(std::move(*lo), std::move(*hi));
}

RealNum operator/(const RealNum& a, const RealNum& b) {
  if (b.is_exact_zero()) throw Error(ErrorCode::Domain, "division by zero");
  if (a.is_exact() && b.is_exact()) return bounded_exact(a.rational() / b.rational());
  if (!b.certainly_positive() && !b.certainly_negative()) {
    throw Error(ErrorCode::PrecisionExhausted, "divisor enclosure contains zero");
  }
  const Bounds x = bounds_of(a);
  const Bounds y = bounds_of(b);
  const BigFloat* xs[2] = {&x.lo, &x.hi};
  const BigFloat* ys[2] = {&y.lo, &y.hi};
  std::optional<BigFloat> lo;
  std::optional<BigFloat> hi;
  for (const BigFloat* p : xs) {
    for (const BigFloat* q : ys) {
      BigFloat d = apply_rounded([&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_div(r, p->get(), q->get(), m); }, MPFR_RNDD);
      BigFloat u = apply_rounded([&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_div(r, p->get(), q->get(), m); }, MPFR_RNDU);
      if (!lo || d.compare(*lo) < 0) lo = std::move(d);
      if (!hi || u.compare(*hi) > 0) hi = std::move(u);
    }
  }
  return RealNum::from_bounds(std::move(*lo), std::move(*hi));
}

RealNum abs(const RealNum& x) {
  if (x.is_exact()) return RealNum(mpq_class(::abs(x.rational())));
  if (x.bounds().lo.sign() >= 0) return x;
  if (x.bounds().hi.sign() <= 0) return -x;
  BigFloat neg_lo = x.bounds().lo;
  mpfr_neg(neg_lo.get(), neg_lo.get(), MPFR_RNDN);
  return RealNum::from_bounds(BigFloat(working_precision()), max_of(neg_lo, x.bounds().hi));
}

RealNum pow_int(const RealNum& x, unsigned long e) {
  if (e == 0) return RealNum(1);
  if (x.is_exact() && rational_bits(x.rational()) * e <= exact_bit_limit()) {
    mpq_class r;
    mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(x.rational().get_mpq_t()), e);
    mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(x.rational().get_mpq_t()), e);
    r.canonicalize();
    return RealNum(std::move(r));
  }
  const Bounds b = bounds_of(x);
  auto power = [e](const BigFloat& v, mpfr_rnd_t rnd) {
    return apply_rounded([&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_pow_ui(r, v.get(), e, m); }, rnd);
  };
  if (e % 2 == 1 || b.lo.sign() >= 0) return RealNum::from_bounds(power(b.lo, MPFR_RNDD), power(b.hi, MPFR_RNDU));
  if (b.hi.sign() <= 0) return RealNum::from_bounds(power(b.hi, MPFR_RNDD), power(b.lo, MPFR_RNDU));
  BigFloat up_lo = power(b.lo, MPFR_RNDU);
  BigFloat up_hi = power(b.hi, MPFR_RNDU);
  return RealNum::from_bounds(BigFloat(working_precision()), max_of(up_lo, up_hi));
}

namespace {

std::optional<mpq_class> exact_root(const mpq_class& q, unsigned long p) {
  const bool negative = sgn(q) < 0;
  if (negative && p % 2 == 0) return std::nullopt;
  mpz_class num = ::abs(q.get_num());
  mpz_class den = q.get_den();
  mpz_class rn;
  mpz_class rd;
  if (mpz_root(rn.get_mpz_t(), num.get_mpz_t(), p) == 0) return std::nullopt;
  if (mpz_root(rd.get_mpz_t(), den.get_mpz_t(), p) == 0) return std::nullopt;
  mpq_class r(rn, rd);
  r.canonicalize();
  return negative ? mpq_class(-r) : r;
}

}  // namespace

RealNum root(const RealNum& x, unsigned long p) {
  if (p == 0) throw Error(ErrorCode::Domain, "zeroth root");
  if (p == 1) return x;
  if (x.is_exact()) {
    if (sgn(x.rational()) < 0 && p % 2 == 0) throw Error(ErrorCode::Domain, "even root of a negative number");
    if (auto r = exact_root(x.rational(), p)) return RealNum(std::move(*r));
  }
  Bounds b = bounds_of(x);
  if (p % 2 == 0) {
    if (b.hi.sign() < 0) throw Error(ErrorCode::Domain, "even root of a negative number");
    if (b.lo.sign() < 0) mpfr_set_zero(b.lo.get(), 1);
  }
  auto rootn = [p](const BigFloat& v, mpfr_rnd_t rnd) {
    return apply_rounded([&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_rootn_ui(r, v.get(), p, m); }, rnd);
  };
  return RealNum::from_bounds(rootn(b.lo, MPFR_RNDD), rootn(b.hi, MPFR_RNDU));
}

RealNum pow_real(const RealNum& base, const RealNum& exponent) {
  if (exponent.is_exact()) {
    const mpq_class& e = exponent.rational();
    if (sgn(e) <= 0) throw Error(ErrorCode::Domain, "pow_real requires a positive exponent");
    const mpz_class& num = e.get_num();
    const mpz_class& den = e.get_den();
    if (base.is_exact() && fits_small(num, 64) && fits_small(den, 64)) {
      if (sgn(base.rational()) < 0) throw Error(ErrorCode::Domain, "pow_real requires a nonnegative base");
      return pow_int(root(base, den.get_ui()), num.get_ui());
    }
    if (den == 1 && fits_small(num, 64)) return pow_int(base, num.get_ui());
  }
  Bounds b = bounds_of(base);
  if (b.hi.sign() < 0) throw Error(ErrorCode::Domain, "pow_real requires a nonnegative base");
  if (b.lo.sign() < 0) mpfr_set_zero(b.lo.get(), 1);
  const Bounds e = bounds_of(exponent);
  if (e.hi.sign() <= 0) throw Error(ErrorCode::Domain, "pow_real requires a positive exponent");
  auto power = [](const BigFloat& v, const BigFloat& w, mpfr_rnd_t rnd) {
    return apply_rounded([&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_pow(r, v.get(), w.get(), m); }, rnd);
  };
  const bool lo_below_one = mpfr_cmp_ui(b.lo.get(), 1) < 0;
  const bool hi_at_most_one = mpfr_cmp_ui(b.hi.get(), 1) <= 0;
  BigFloat lo = power(b.lo, lo_below_one ? e.hi : e.lo, MPFR_RNDD);
  BigFloat hi = power(b.hi, hi_at_most_one ? e.lo : e.hi, MPFR_RNDU);
  return RealNum::from_bounds(std::move(lo), std::move(hi));
}

RealNum exp2(const RealNum& x) {
  if (x.is_exact() && x.rational().get_den() == 1 && fits_small(x.rational().get_num(), 4096)) {
    const long n = x.rational().get_num().get_si();
    mpq_class r(1);
    if (n >= 0) {
      mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(n));
    } else {
      mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-n));
    }
    return RealNum(std::move(r));
  }
  const Bounds b = bounds_of(x);
  auto e2 = [](const BigFloat& v, mpfr_rnd_t rnd) {
    return apply_rounded([&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_exp2(r, v.get(), m); }, rnd);
  };
  return RealNum::from_bounds(e2(b.lo, MPFR_RNDD), e2(b.hi, MPFR_RNDU));
}

RealNum hull(const RealNum& a, const RealNum& b) {
  if (a.is_exact() && b.is_exact() && a.rational() == b.rational()) return a;
  const Bounds x = bounds_of(a);
  const Bounds y = bounds_of(b);
  return RealNum::from_bounds(min_of(x.lo, y.lo), max_of(x.hi, y.hi));
}

RealNum span(const RealNum& low, const RealNum& high) {
  if (low.is_exact() && high.is_exact() && low.rational() == high.rational()) return low;
  const Bounds x = bounds_of(low);
  const Bounds y = bounds_of(high);
  return RealNum::from_bounds(min_of(x.lo, y.lo), max_of(x.hi, y.hi));
}

Order compare(const RealNum& a, const RealNum& b) {
  if (a.is_exact() && b.is_exact()) {
    const int c = cmp(a.rational(), b.rational());
    return c < 0 ? Order::Less : (c > 0 ? Order::Greater : Order::Equal);
  }
  // Compare enclosure endpoints directly; no rounding involved.
  const Bounds x = bounds_of(a);
  const Bounds y = bounds_of(b);
  if (mpfr_cmp(x.hi.get(), y.lo.get()) < 0) return Order::Less;
  if (mpfr_cmp(x.lo.get(), y.hi.get()) > 0) return Order::Greater;
  if (x.lo.compare(x.hi) == 0 && y.lo.compare(y.hi) == 0 && x.lo.compare(y.lo) == 0) {
    if (a.is_exact() || b.is_exact()) {
      // An exact rational may differ from a dyadic point; decide exactly.
      const mpq_class qa = a.is_exact() ? a.rational() : x.lo.to_rational();
      const mpq_class qb = b.is_exact() ? b.rational() : y.lo.to_rational();
      const int c = cmp(qa, qb);
      return c < 0 ? Order::Less : (c > 0 ? Order::Greater : Order::Equal);
    }
    return Order::Equal;
  }
  if (a.is_exact() || b.is_exact()) {
    // Rounding of the exact operand may have caused the overlap; retry exactly
    // against the tracked enclosure.
    const mpq_class& q = a.is_exact() ? a.rational() : b.rational();
    const Bounds& t = a.is_exact() ? y : x;
    const bool exact_left = a.is_exact();
    const mpq_class lo = t.lo.to_rational();
    const mpq_class hi = t.hi.to_rational();
    if (q < lo) return exact_left ? Order::Less : Order::Greater;
    if (q > hi) return exact_left ? Order::Greater : Order::Less;
    if (q == lo && q == hi) return Order::Equal;
  }
  return Order::Unknown;
}

bool certainly_less(const RealNum& a, const RealNum& b) { return compare(a, b) == Order::Less; }

bool certainly_less_equal(const RealNum& a, const RealNum& b) {
  const Order o = compare(a, b);
  if (o == Order::Less || o == Order::Equal) return true;
  if (o == Order::Greater) return false;
  // a.hi <= b.lo also certifies a <= b.
  const Bounds x = bounds_of(a);
  const Bounds y = bounds_of(b);
  return mpfr_cmp(x.hi.get(), y.lo.get()) <= 0;
}

RealNum abs_diff_bound(const RealNum& a, const RealNum& b) {
  const RealNum d = a - b;
  if (d.is_exact()) return abs(d);
  const BigFloat lo = d.lower();
  const BigFloat hi = d.upper();
  BigFloat m(working_precision());
  mpfr_abs(m.get(), lo.get(), MPFR_RNDU);
  BigFloat h(working_precision());
  mpfr_abs(h.get(), hi.get(), MPFR_RNDU);
  return RealNum::point(max_of(m, h));
}

bool certainly_within(const RealNum& a, const RealNum& b, const RealNum& tol) {
  return certainly_less_equal(abs_diff_bound(a, b), tol);
}

std::optional<mpz_class> common_floor(const RealNum& x) {
  if (x.is_exact()) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), x.rational().get_num_mpz_t(), x.rational().get_den_mpz_t());
    return f;
  }
  const auto& b = x.bounds();
  if (!b.lo.is_finite() || !b.hi.is_finite()) return std::nullopt;
  mpz_class f;
  mpfr_get_z(f.get_mpz_t(), b.lo.get(), MPFR_RNDD);
  // hi <= f + 1 keeps every value inside the closed cell [f, f+1].
  mpz_class next = f + 1;
  if (mpfr_cmp_z(b.hi.get(), next.get_mpz_t()) <= 0) return f;
  return std::nullopt;
}

}  // namespace lineact
