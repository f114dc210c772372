#include "sgk/function_expr.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace sgk {

namespace {

using Mono = FunctionExpr::Mono;

Mono mono_mul(const Mono& a, const Mono& b) {
  Mono out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      int e = a[i].second + b[j].second;
      if (e != 0) out.emplace_back(a[i].first, e);
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

FunctionExpr::FunctionExpr(const Scalar& c) {
  if (!c.is_zero()) terms_.emplace(Mono{}, c);
}

FunctionExpr FunctionExpr::variable(Var v, int exponent) {
  FunctionExpr f;
  if (exponent == 0)
    f.terms_.emplace(Mono{}, Scalar(1));
  else
    f.terms_.emplace(Mono{{v, exponent}}, Scalar(1));
  return f;
}

FunctionExpr FunctionExpr::term(Mono m, const Scalar& c) {
  std::sort(m.begin(), m.end());
  Mono merged;
  for (const auto& [v, e] : m) {
    if (!merged.empty() && merged.back().first == v)
      merged.back().second += e;
    else
      merged.emplace_back(v, e);
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(), [](const auto& p) { return p.second == 0; }), merged.end());
  FunctionExpr f;
  f.add_term(merged, c);
  return f;
}

void FunctionExpr::add_term(const Mono& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

std::optional<Scalar> FunctionExpr::constant_value() const {
  if (terms_.empty()) return Scalar();
  if (terms_.size() == 1 && terms_.begin()->first.empty()) return terms_.begin()->second;
  return std::nullopt;
}

FunctionExpr::Var FunctionExpr::var_bound() const {
  Var b = 0;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m) b = std::max(b, v + 1);
  return b;
}

bool FunctionExpr::uses_negative_powers() const {
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m)
      if (e < 0) return true;
  return false;
}

FunctionExpr& FunctionExpr::operator+=(const FunctionExpr& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

FunctionExpr& FunctionExpr::operator-=(const FunctionExpr& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

FunctionExpr operator*(const FunctionExpr& a, const FunctionExpr& b) {
  FunctionExpr out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(mono_mul(ma, mb), ca * cb);
  return out;
}

FunctionExpr FunctionExpr::operator-() const { return scaled(Scalar(-1)); }

FunctionExpr FunctionExpr::scaled(const Scalar& c) const {
  FunctionExpr out;
  if (c.is_zero()) return out;
  for (const auto& [m, v] : terms_) out.terms_.emplace(m, v * c);
  return out;
}

FunctionExpr FunctionExpr::inverse() const {
  if (terms_.size() != 1) raise(Errc::Degenerate, "only single-term expressions can be inverted");
  const auto& [m, c] = *terms_.begin();
  Mono inv = m;
  for (auto& p : inv) p.second = -p.second;
  FunctionExpr out;
  out.add_term(inv, c.inverse());
  return out;
}

FunctionExpr FunctionExpr::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  FunctionExpr result(Scalar(1));
  for (int k = 0; k < e; ++k) result = result * *this;
  return result;
}

FunctionExpr FunctionExpr::partial(Var v) const {
  FunctionExpr out;
  for (const auto& [m, c] : terms_) {
    auto it = std::find_if(m.begin(), m.end(), [&](const auto& p) { return p.first == v; });
    if (it == m.end()) continue;
    int e = it->second;
    Mono d = m;
    auto& slot = d[static_cast<std::size_t>(it - m.begin())];
    slot.second -= 1;
    if (slot.second == 0) d.erase(d.begin() + (it - m.begin()));
    out.add_term(d, c * Scalar(e));
  }
  return out;
}

FunctionExpr FunctionExpr::substitute(const std::vector<std::optional<FunctionExpr>>& images,
                                      const std::vector<std::optional<FunctionExpr>>& inverse_images) const {
  std::map<std::pair<Var, int>, FunctionExpr> power_cache;
  auto power_of = [&](Var v, int e) -> const FunctionExpr& {
    auto key = std::make_pair(v, e);
    auto it = power_cache.find(key);
    if (it != power_cache.end()) return it->second;
    FunctionExpr p;
    bool mapped = v < images.size() && images[v].has_value();
    if (!mapped) {
      p = variable(v, e);
    } else if (e > 0) {
      p = images[v]->pow(e);
    } else if (v < inverse_images.size() && inverse_images[v].has_value()) {
      p = inverse_images[v]->pow(-e);
    } else {
      if (!images[v]->is_single_term())
        raise(Errc::Degenerate, "substitution would divide by a non-monomial expression");
      p = images[v]->pow(e);
    }
    return power_cache.emplace(key, std::move(p)).first->second;
  };
  FunctionExpr out;
  for (const auto& [m, c] : terms_) {
    FunctionExpr t(c);
    for (const auto& [v, e] : m) t = t * power_of(v, e);
    out += t;
  }
  return out;
}

FunctionExpr FunctionExpr::rename(const std::vector<Var>& map) const {
  FunctionExpr out;
  for (const auto& [m, c] : terms_) {
    Mono r;
    for (const auto& [v, e] : m) {
      if (v >= map.size()) raise(Errc::DimensionMismatch, "variable rename map too short");
      r.emplace_back(map[v], e);
    }
    out += term(std::move(r), c);
  }
  return out;
}

std::string FunctionExpr::to_string(std::size_t n, std::size_t n_blocks) const {
  if (terms_.empty()) return "0";
  auto var_name = [&](Var v) {
    if (v < n * n) {
      std::size_t i = v / n + 1, j = v % n + 1;
      if (n <= 9) return "x" + std::to_string(i) + std::to_string(j);
      return "x[" + std::to_string(i) + "," + std::to_string(j) + "]";
    }
    std::size_t b = v - n * n;
    if (n_blocks <= 1 && b == 0) return std::string("detinv");
    return "detinv[" + std::to_string(b + 1) + "]";
  };
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Scalar coef = c;
    bool negative = coef.is_real() && sgn(coef.re()) < 0;
    if (negative) coef = -coef;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    bool need_star = false;
    if (!coef.is_one() || m.empty()) {
      bool wrap = !coef.is_real();
      os << (wrap ? "(" : "") << coef.to_string() << (wrap ? ")" : "");
      need_star = true;
    }
    for (const auto& [v, e] : m) {
      if (need_star) os << "*";
      os << var_name(v);
      if (e != 1) os << "^" << (e < 0 ? "(" + std::to_string(e) + ")" : std::to_string(e));
      need_star = true;
    }
  }
  return os.str();
}

namespace {

class ExprParser {
 public:
  ExprParser(std::string_view text, std::size_t n, std::size_t n_blocks) : s_(text), n_(n), nb_(n_blocks) {}

  FunctionExpr parse_all() {
    FunctionExpr e = expr();
    skip();
    if (pos_ != s_.size()) error("unexpected character");
    return e;
  }

 private:
  [[noreturn]] void error(const std::string& msg) const {
    raise(Errc::Parse, "expression '" + std::string(s_) + "' at position " + std::to_string(pos_) + ": " + msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  long integer() {
    skip();
    std::size_t b = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (b == pos_) error("expected integer");
    if (pos_ - b > 9) error("integer too large");
    return std::stol(std::string(s_.substr(b, pos_ - b)));
  }

  FunctionExpr expr() {
    FunctionExpr acc;
    bool neg = false;
    if (accept('-'))
      neg = true;
    else
      accept('+');
    FunctionExpr t = term();
    acc = neg ? -t : t;
    while (true) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        break;
    }
    return acc;
  }

  FunctionExpr term() {
    FunctionExpr acc = power();
    while (true) {
      if (accept('*')) {
        acc = acc * power();
      } else if (accept('/')) {
        FunctionExpr d = power();
        if (d.is_zero()) raise(Errc::Degenerate, "expression '" + std::string(s_) + "' divides by zero");
        if (!d.is_single_term()) error("division only by a single-term expression");
        acc = acc * d.inverse();
      } else {
        break;
      }
    }
    return acc;
  }

  FunctionExpr power() {
    FunctionExpr base = primary();
    if (accept('^')) {
      bool neg = false;
      bool paren = accept('(');
      if (accept('-')) neg = true;
      long e = integer();
      if (paren && !accept(')')) error("expected ')'");
      if (e > 64) error("exponent too large");
      int ee = static_cast<int>(neg ? -e : e);
      if (ee < 0 && !base.is_single_term()) error("negative power of a multi-term expression");
      if (ee < 0 && base.is_zero()) raise(Errc::Degenerate, "negative power of zero");
      base = base.pow(ee);
    }
    return base;
  }

  std::size_t bracket_index(std::size_t limit, const char* what) {
    long b = integer();
    if (b < 1 || static_cast<std::size_t>(b) > limit) error(std::string(what) + " index out of range");
    return static_cast<std::size_t>(b - 1);
  }

  FunctionExpr primary() {
    skip();
    if (pos_ >= s_.size()) error("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      FunctionExpr e = expr();
      if (!accept(')')) error("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return FunctionExpr(Scalar(integer()));
    if (!std::isalpha(static_cast<unsigned char>(c))) error("unexpected character");
    std::size_t b = pos_;
    while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string id(s_.substr(b, pos_ - b));
    if (id == "i") return FunctionExpr(Scalar::imag_unit());
    if (id == "detinv" || id == "det") {
      std::size_t blk = 0;
      if (accept('[')) {
        blk = bracket_index(nb_, "block");
        if (!accept(']')) error("expected ']'");
      } else if (nb_ != 1) {
        error("block index required for detinv with several blocks");
      }
      auto v = static_cast<FunctionExpr::Var>(n_ * n_ + blk);
      return FunctionExpr::variable(v, id == "det" ? -1 : 1);
    }
    if (id == "x") {
      if (!accept('[')) error("expected '[' after x");
      std::size_t i = bracket_index(n_, "row");
      if (!accept(',')) error("expected ','");
      std::size_t j = bracket_index(n_, "column");
      if (!accept(']')) error("expected ']'");
      return FunctionExpr::variable(static_cast<FunctionExpr::Var>(i * n_ + j));
    }
    if (id.size() == 3 && id[0] == 'x' && std::isdigit(static_cast<unsigned char>(id[1])) &&
        std::isdigit(static_cast<unsigned char>(id[2]))) {
      std::size_t i = static_cast<std::size_t>(id[1] - '0'), j = static_cast<std::size_t>(id[2] - '0');
      if (i < 1 || j < 1 || i > n_ || j > n_) error("coordinate " + id + " out of range");
      return FunctionExpr::variable(static_cast<FunctionExpr::Var>((i - 1) * n_ + (j - 1)));
    }
    error("unknown identifier '" + id + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t n_, nb_;
};

}  // namespace

FunctionExpr FunctionExpr::parse(std::string_view text, std::size_t n, std::size_t n_blocks) {
  return ExprParser(text, n, n_blocks).parse_all();
}

}  // namespace sgk
