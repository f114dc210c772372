#include "sgk/exactnum.hpp"

#include <algorithm>
#include <cctype>

namespace sgk {

Scalar Scalar::ratio(long num, long den) {
  if (den == 0) raise(Errc::Degenerate, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return Scalar(q);
}

Scalar Scalar::inverse() const {
  if (is_zero()) raise(Errc::Degenerate, "division by zero scalar");
  if (is_real()) return Scalar(Rational(1) / re_);
  Rational n = re_ * re_ + im_ * im_;
  return Scalar(Rational(re_ / n), Rational(-im_ / n));
}

Scalar Scalar::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar result(1);
  Scalar base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (is_real() && o.is_real()) {
    re_ *= o.re_;
    return *this;
  }
  Rational r = re_ * o.re_ - im_ * o.im_;
  Rational i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) raise(Errc::Degenerate, "division by zero scalar");
  if (o.is_real()) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  return *this *= o.inverse();
}

std::string Scalar::to_string() const {
  if (is_real()) return re_.get_str();
  Rational aim = abs(im_);
  if (sgn(re_) == 0) return im_.get_str() + "*i";
  return re_.get_str() + (sgn(im_) > 0 ? "+" : "-") + aim.get_str() + "*i";
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

namespace {

Rational parse_rational(std::string_view t, std::string_view whole) {
  auto bad = [&] { raise(Errc::Parse, "malformed scalar '" + std::string(whole) + "'"); };
  if (t.empty()) bad();
  std::size_t pos = 0;
  if (t[0] == '+' || t[0] == '-') pos = 1;
  std::size_t slash = t.find('/');
  auto digits = [&](std::size_t b, std::size_t e) {
    if (b >= e) return false;
    for (std::size_t k = b; k < e; ++k)
      if (!std::isdigit(static_cast<unsigned char>(t[k]))) return false;
    return true;
  };
  if (slash == std::string_view::npos) {
    if (!digits(pos, t.size())) bad();
  } else {
    if (!digits(pos, slash) || !digits(slash + 1, t.size())) bad();
    bool zero_den = true;
    for (std::size_t k = slash + 1; k < t.size(); ++k)
      if (t[k] != '0') zero_den = false;
    if (zero_den) raise(Errc::Degenerate, "zero denominator in '" + std::string(whole) + "'");
  }
  std::string s(t[0] == '+' ? t.substr(1) : t);
  Rational q;
  if (q.set_str(s, 10) != 0) bad();
  q.canonicalize();
  return q;
}

// Imaginary coefficient text before the trailing "i": "", "+", "-", "c/d*", "-c/d*".
Rational parse_imag(std::string_view t, std::string_view whole) {
  if (t.empty() || t == "+") return 1;
  if (t == "-") return -1;
  if (t.back() != '*') raise(Errc::Parse, "malformed scalar '" + std::string(whole) + "'");
  return parse_rational(t.substr(0, t.size() - 1), whole);
}

}  // namespace

Scalar Scalar::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  std::string_view v(s);
  if (v.empty()) raise(Errc::Parse, "empty scalar");
  if (v.back() != 'i') return Scalar(parse_rational(v, text));
  std::string_view body = v.substr(0, v.size() - 1);
  // Split at the last sign that is not the leading character.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if (body[k] == '+' || body[k] == '-') {
      split = k;
      break;
    }
  }
  if (split == std::string_view::npos) return Scalar(Rational(0), parse_imag(body, text));
  return Scalar(parse_rational(body.substr(0, split), text), parse_imag(body.substr(split), text));
}

Scalar scalar_arith(const Scalar& a, const Scalar& b, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
    case ArithOp::Div: return a / b;
  }
  return {};
}

Jet1 Jet1::inverse() const {
  if (value_.is_zero()) raise(Errc::Degenerate, "jet with zero value is not invertible");
  Scalar inv = value_.inverse();
  return Jet1(inv, -(deriv_ * inv * inv));
}

Jet1& Jet1::operator+=(const Jet1& o) {
  value_ += o.value_;
  deriv_ += o.deriv_;
  return *this;
}

Jet1& Jet1::operator-=(const Jet1& o) {
  value_ -= o.value_;
  deriv_ -= o.deriv_;
  return *this;
}

Jet1& Jet1::operator*=(const Jet1& o) {
  Scalar d = value_ * o.deriv_ + deriv_ * o.value_;
  value_ *= o.value_;
  deriv_ = std::move(d);
  return *this;
}

int inversion_sign(std::span<const int> seq) {
  long inv = 0;
  for (std::size_t a = 0; a < seq.size(); ++a)
    for (std::size_t b = a + 1; b < seq.size(); ++b)
      if (seq[a] > seq[b]) ++inv;
  return sign_pow(inv);
}

int permutation_sign(std::span<const int> perm) {
  std::vector<int> seen(perm.size() + 1, 0);
  for (int v : perm) {
    if (v < 1 || static_cast<std::size_t>(v) > perm.size() || seen[v])
      raise(Errc::InvalidInput, "not a permutation of 1..r");
    seen[v] = 1;
  }
  return inversion_sign(perm);
}

int shuffle_sign(std::span<const int> left, std::span<const int> right) {
  auto increasing = [](std::span<const int> s) { return std::is_sorted(s.begin(), s.end()) && std::adjacent_find(s.begin(), s.end()) == s.end(); };
  if (!increasing(left) || !increasing(right)) raise(Errc::InvalidInput, "shuffle parts must be strictly increasing");
  std::vector<int> seq(left.begin(), left.end());
  seq.insert(seq.end(), right.begin(), right.end());
  return permutation_sign(seq);
}

}  // namespace sgk
