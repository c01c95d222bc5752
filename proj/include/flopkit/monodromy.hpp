#pragma once
// Word calculus on the strip of mutation functors between the algebras
// Lambda_j (nodes p_j) and the two geometric sides X, X+. Words are stored in
// application order: letters[0] acts first. Rendering reverses this into the
// usual right-to-left composition.

#include <array>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <json.hpp>

#include "flopkit/error.hpp"
#include "flopkit/numerics.hpp"

namespace flopkit::monodromy {

using numerics::Index;

enum class Side { X, XPlus };

struct StripNode {
  bool geometric = false;
  Index j = 0;         // algebraic nodes
  Side side = Side::X;  // geometric nodes

  static StripNode algebraic(Index j) { return {false, j, Side::X}; }
  static StripNode geom(Side s) { return {true, 0, s}; }

  bool operator==(const StripNode&) const = default;

  std::string render() const {
    if (!geometric) return fmt::format("p_{}", j);
    return side == Side::X ? "X" : "X+";
  }
};

enum class Gen { MutFwd, MutBwd, Beta, Flop, PsiLink, PsiPlusLink, TensorX, TensorXPlus };

struct Letter {
  Gen gen = Gen::MutFwd;
  /// Wall for mutations, source node for Beta, power for tensors, and for
  /// Flop the source side (0: X -> X+, 1: X+ -> X).
  Index index = 0;
  bool inverse = false;  // formal inverse

  static Letter fwd(Index i) { return {Gen::MutFwd, i, false}; }
  static Letter bwd(Index i) { return {Gen::MutBwd, i, false}; }
  static Letter beta(Index j) { return {Gen::Beta, j, false}; }
  static Letter flop(Side from) { return {Gen::Flop, from == Side::X ? 0 : 1, false}; }
  static Letter psi() { return {Gen::PsiLink, 0, false}; }
  static Letter psi_plus() { return {Gen::PsiPlusLink, 0, false}; }
  static Letter tensor_x(Index k) { return {Gen::TensorX, k, false}; }
  static Letter tensor_x_plus(Index k) { return {Gen::TensorXPlus, k, false}; }

  Letter inv() const { return {gen, index, !inverse}; }
  bool algebraic() const { return gen == Gen::MutFwd || gen == Gen::MutBwd || gen == Gen::Beta; }
  bool mutation() const { return gen == Gen::MutFwd || gen == Gen::MutBwd; }

  bool operator==(const Letter&) const = default;

  /// Token accepted by parse_word.
  std::string render() const {
    std::string s;
    switch (gen) {
      case Gen::MutFwd: s = fmt::format("phi_fwd({})", index); break;
      case Gen::MutBwd: s = fmt::format("phi_bwd({})", index); break;
      case Gen::Beta: s = fmt::format("beta({})", index); break;
      case Gen::Flop: s = index == 0 ? "flop" : "flop_rev"; break;
      case Gen::PsiLink: s = "psi"; break;
      case Gen::PsiPlusLink: s = "psi_plus"; break;
      case Gen::TensorX: s = fmt::format("tensor_x({})", index); break;
      case Gen::TensorXPlus: s = fmt::format("tensor_xplus({})", index); break;
    }
    return inverse ? "inv(" + s + ")" : s;
  }
};

/// (source, target) of a letter; period is needed for Beta.
inline std::pair<StripNode, StripNode> endpoints(const Letter& l, Index period) {
  using N = StripNode;
  std::pair<N, N> e;
  switch (l.gen) {
    case Gen::MutFwd: e = {N::algebraic(l.index), N::algebraic(l.index + 1)}; break;
    case Gen::MutBwd: e = {N::algebraic(l.index + 1), N::algebraic(l.index)}; break;
    case Gen::Beta: e = {N::algebraic(l.index), N::algebraic(l.index + period)}; break;
    case Gen::Flop:
      e = l.index == 0 ? std::pair{N::geom(Side::X), N::geom(Side::XPlus)}
                       : std::pair{N::geom(Side::XPlus), N::geom(Side::X)};
      break;
    case Gen::PsiLink: e = {N::geom(Side::X), N::algebraic(0)}; break;
    case Gen::PsiPlusLink: e = {N::geom(Side::XPlus), N::algebraic(1)}; break;
    case Gen::TensorX: e = {N::geom(Side::X), N::geom(Side::X)}; break;
    case Gen::TensorXPlus: e = {N::geom(Side::XPlus), N::geom(Side::XPlus)}; break;
  }
  if (l.inverse) std::swap(e.first, e.second);
  return e;
}

class FunctorWord {
 public:
  /// Empty word at a node.
  FunctorWord(Index period, StripNode at) : period_(period), source_(at), target_(at) {
    if (period <= 0) throw DomainError("period must be positive");
  }

  /// Throws DomainError unless consecutive letters compose.
  FunctorWord(Index period, StripNode source, std::vector<Letter> letters)
      : FunctorWord(period, source) {
    for (const auto& l : letters) push(l);
  }

  static FunctorWord of(Index period, std::vector<Letter> letters) {
    if (letters.empty()) throw DomainError("cannot infer the node of an empty word");
    const auto src = endpoints(letters.front(), period).first;
    return FunctorWord(period, src, std::move(letters));
  }

  Index period() const { return period_; }
  const StripNode& source() const { return source_; }
  const StripNode& target() const { return target_; }
  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  std::size_t size() const { return letters_.size(); }
  bool closed() const { return source_ == target_; }
  bool algebraic() const {
    for (const auto& l : letters_)
      if (!l.algebraic()) return false;
    return true;
  }

  void push(const Letter& l) {
    const auto [s, t] = endpoints(l, period_);
    if (!(s == target_))
      throw DomainError(fmt::format("{} starts at {} but the word ends at {}", l.render(),
                                    s.render(), target_.render()));
    letters_.push_back(l);
    target_ = t;
  }

  /// This word followed by `next` (i.e. next o this).
  FunctorWord then(const FunctorWord& next) const {
    if (next.period_ != period_) throw DomainError("words from different lengths");
    FunctorWord w = *this;
    if (!(next.source_ == target_))
      throw DomainError(fmt::format("cannot follow a word ending at {} by one starting at {}",
                                    target_.render(), next.source_.render()));
    for (const auto& l : next.letters_) w.push(l);
    return w;
  }

  FunctorWord inverse() const {
    FunctorWord w(period_, target_);
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.push(it->inv());
    return w;
  }

  /// Right-to-left composite, e.g. "phi_bwd(0).phi_fwd(0)"; "identity" if empty.
  std::string render() const {
    if (letters_.empty()) return "identity";
    std::vector<std::string> parts;
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) parts.push_back(it->render());
    return fmt::format("{}", fmt::join(parts, "."));
  }

  bool operator==(const FunctorWord&) const = default;

 private:
  Index period_;
  StripNode source_;
  StripNode target_;
  std::vector<Letter> letters_;
};

/// a o b: b acts first.
inline FunctorWord compose(const FunctorWord& a, const FunctorWord& b) { return b.then(a); }

inline Index period_of(int ell) { return numerics::for_length(ell).period(); }

inline FunctorWord kappa(int ell, Index i) {
  if (i < 0) throw DomainError(fmt::format("kappa({}) needs i >= 0; use lambda", i));
  FunctorWord w(period_of(ell), StripNode::algebraic(0));
  for (Index k = 0; k < i; ++k) w.push(Letter::fwd(k));
  return w;
}

/// p_i -> p_0 for i < 0, crossing walls i, ..., -1 upwards.
inline FunctorWord lambda(int ell, Index i) {
  if (i >= 0) throw DomainError(fmt::format("lambda({}) needs i < 0; use kappa", i));
  FunctorWord w(period_of(ell), StripNode::algebraic(i));
  for (Index k = i; k < 0; ++k) w.push(Letter::fwd(k));
  return w;
}

/// kappa_i^{-1} o (backward o forward across wall i) o kappa_i, any i >= 0.
inline FunctorWord wall_loop(int ell, Index i) {
  const auto k = kappa(ell, i);
  FunctorWord inner(period_of(ell), StripNode::algebraic(i), {Letter::fwd(i), Letter::bwd(i)});
  return k.then(inner).then(k.inverse());
}

inline FunctorWord loop_q(int ell, Index i) {
  const Index n = period_of(ell);
  if (i < 0 || i >= n) throw DomainError(fmt::format("q_{} outside 0..{}", i, n - 1));
  return wall_loop(ell, i);
}

/// beta^{-1} o Phi_{N-1} o ... o Phi_0, forward mutations.
inline FunctorWord loop_q_minus(int ell) {
  const Index n = period_of(ell);
  FunctorWord w(n, StripNode::algebraic(0));
  for (Index k = 0; k < n; ++k) w.push(Letter::fwd(k));
  w.push(Letter::beta(0).inv());
  return w;
}

/// Phi_0 o ... o Phi_{N-1} o beta, backward mutations.
inline FunctorWord loop_q_plus(int ell) {
  const Index n = period_of(ell);
  FunctorWord w(n, StripNode::algebraic(0), {Letter::beta(0)});
  for (Index k = n - 1; k >= 0; --k) w.push(Letter::bwd(k));
  return w;
}

/// Cancels adjacent letter / formal-inverse pairs until none remain.
inline FunctorWord reduce(const FunctorWord& w) {
  std::vector<Letter> stack;
  for (const auto& l : w.letters()) {
    if (!stack.empty() && stack.back() == l.inv()) {
      stack.pop_back();
    } else {
      stack.push_back(l);
    }
  }
  return FunctorWord(w.period(), w.source(), std::move(stack));
}

/// Moves every beta letter past the mutations that follow it, using
/// beta o Phi_j = Phi_{j+N} o beta, then reduces.
inline FunctorWord slide_beta(const FunctorWord& w) {
  const Index n = w.period();
  auto letters = w.letters();
  bool moved = true;
  while (moved) {
    moved = false;
    for (std::size_t k = 0; k + 1 < letters.size(); ++k) {
      const Letter b = letters[k];
      const Letter m = letters[k + 1];
      if (b.gen != Gen::Beta || !m.mutation()) continue;
      // forward beta lowers the following letter by N; inverse beta raises it
      const Index delta = b.inverse ? n : -n;
      Letter shifted = m;
      shifted.index += delta;
      const auto [s, t] = endpoints(shifted, n);
      (void)s;
      const Index beta_src = b.inverse ? t.j - n : t.j;
      letters[k] = shifted;
      letters[k + 1] = Letter{Gen::Beta, beta_src, b.inverse};
      moved = true;
    }
  }
  return reduce(FunctorWord(n, w.source(), std::move(letters)));
}

struct Mat2 {
  std::array<std::int64_t, 4> m{1, 0, 0, 1};  // row major

  static Mat2 identity() { return {}; }
  static Mat2 of(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    return {{a, b, c, d}};
  }

  std::int64_t operator()(int r, int c) const { return m[static_cast<std::size_t>(2 * r + c)]; }
  Mat2 operator*(const Mat2& o) const {
    const auto& a = m;
    const auto& b = o.m;
    return of(a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
              a[2] * b[1] + a[3] * b[3]);
  }
  std::int64_t det() const { return m[0] * m[3] - m[1] * m[2]; }
  std::int64_t trace() const { return m[0] + m[3]; }
  Mat2 inverse() const {
    const auto d = det();
    if (d != 1 && d != -1) throw DomainError(fmt::format("{} is not invertible over Z", render()));
    return of(d * m[3], -d * m[1], -d * m[2], d * m[0]);
  }
  bool operator==(const Mat2&) const = default;

  std::string render() const { return fmt::format("[[{},{}],[{},{}]]", m[0], m[1], m[2], m[3]); }
  nlohmann::json to_json() const {
    return nlohmann::json::array({{m[0], m[1]}, {m[2], m[3]}});
  }
};

/// Columns are the images of ([S_0], [S_1]).
inline Mat2 mutation_matrix(Index i, int ell) {
  const std::int64_t n = numerics::n_at(i, ell);
  return numerics::floor_mod(i, 2) == 0 ? Mat2::of(1, 0, n, -1) : Mat2::of(-1, n, 0, 1);
}

inline Mat2 beta_matrix(int ell) { return ell == 1 ? Mat2::of(0, 1, 1, 0) : Mat2::identity(); }

inline Mat2 k_matrix(const Letter& l, int ell) {
  Mat2 a;
  switch (l.gen) {
    case Gen::MutFwd:
    case Gen::MutBwd: a = mutation_matrix(l.index, ell); break;
    case Gen::Beta: a = beta_matrix(ell); break;
    default: throw DomainError(fmt::format("{} has no K-matrix", l.render()));
  }
  return l.inverse ? a.inverse() : a;
}

/// Product along any algebraic word, later letters on the left.
inline Mat2 k_matrix_path(const FunctorWord& w, int ell) {
  if (w.period() != period_of(ell)) throw DomainError("word built for a different length");
  Mat2 acc;
  for (const auto& l : w.letters()) acc = k_matrix(l, ell) * acc;
  return acc;
}

/// K-matrix of a closed algebraic word.
inline Mat2 k_matrix(const FunctorWord& w, int ell) {
  if (!w.algebraic()) throw DomainError(fmt::format("{} is not algebraic", w.render()));
  if (!w.closed())
    throw DomainError(fmt::format("{} is open ({} -> {})", w.render(), w.source().render(),
                                  w.target().render()));
  return k_matrix_path(w, ell);
}

// Flop rewrites, in application order:
//   F^{-1} (F : X+ -> X) then psi_plus  ==  psi then Phi_0 forward
//   F^{-1} (F : X -> X+) then psi       ==  psi_plus then Phi_0 backward
// together with their formal inverses.
inline FunctorWord rewrite_flops(const FunctorWord& w) {
  const Letter f_into_x = Letter::flop(Side::XPlus);
  const Letter f_into_plus = Letter::flop(Side::X);
  struct Rule {
    std::array<Letter, 2> lhs;
    std::array<Letter, 2> rhs;
  };
  const std::array<Rule, 4> rules = {{
      {{f_into_x.inv(), Letter::psi_plus()}, {Letter::psi(), Letter::fwd(0)}},
      {{Letter::psi_plus().inv(), f_into_x}, {Letter::fwd(0).inv(), Letter::psi().inv()}},
      {{f_into_plus.inv(), Letter::psi()}, {Letter::psi_plus(), Letter::bwd(0)}},
      {{Letter::psi().inv(), f_into_plus}, {Letter::bwd(0).inv(), Letter::psi_plus().inv()}},
  }};
  auto letters = w.letters();
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = 0; k + 1 < letters.size() && !changed; ++k)
      for (const auto& r : rules)
        if (letters[k] == r.lhs[0] && letters[k + 1] == r.lhs[1]) {
          letters[k] = r.rhs[0];
          letters[k + 1] = r.rhs[1];
          changed = true;
          break;
        }
  }
  return FunctorWord(w.period(), w.source(), std::move(letters));
}

inline FunctorWord normalize(const FunctorWord& w) { return slide_beta(reduce(rewrite_flops(w))); }

/// Loops around the punctures based at X (a, b_i) and at X+ (c_i, d).
inline std::map<std::string, FunctorWord> two_basepoint_words(int ell) {
  const Index n = period_of(ell);
  const Index up = (n + 1) / 2;
  const Index down = n / 2;
  const auto X = StripNode::geom(Side::X);
  const auto XP = StripNode::geom(Side::XPlus);
  const Letter f_into_x = Letter::flop(Side::XPlus);
  const Letter f_into_plus = Letter::flop(Side::X);
  std::map<std::string, FunctorWord> out;

  for (Index i = 1; i <= up; ++i) {
    FunctorWord conj(n, X, {f_into_x.inv(), Letter::psi_plus()});
    for (Index k = 1; k < i; ++k) conj.push(Letter::fwd(k));
    FunctorWord inner(n, conj.target(), {Letter::fwd(i), Letter::bwd(i)});
    out.emplace(fmt::format("b{}", i), conj.then(inner).then(conj.inverse()));
  }
  for (Index i = 1; i <= down; ++i) {
    FunctorWord conj(n, XP, {f_into_plus.inv(), Letter::psi()});
    for (Index k = -1; k > -i; --k) conj.push(Letter::bwd(k));
    FunctorWord inner(n, conj.target(), {Letter::bwd(-i), Letter::fwd(-i)});
    out.emplace(fmt::format("c{}", i), conj.then(inner).then(conj.inverse()));
  }

  FunctorWord a(n, X, {f_into_x.inv(), Letter::psi_plus()});
  for (Index k = 1; k < up; ++k) a.push(Letter::fwd(k));
  a.push(Letter::beta(up - n).inv());
  for (Index k = -down; k < 0; ++k) a.push(Letter::fwd(k));
  a.push(Letter::psi().inv());
  out.emplace("a", a);

  FunctorWord d(n, XP, {f_into_plus.inv(), Letter::psi()});
  for (Index k = -1; k >= -down; --k) d.push(Letter::bwd(k));
  d.push(Letter::beta(-down));
  for (Index k = n - down - 1; k >= 1; --k) d.push(Letter::bwd(k));
  d.push(Letter::psi_plus().inv());
  out.emplace("d", d);
  return out;
}

/// Conjugate link o w o link^{-1} of a loop w based at the link's target.
inline FunctorWord conjugate_by(const Letter& link, const FunctorWord& w) {
  FunctorWord l(w.period(), endpoints(link, w.period()).first, {link});
  return l.then(w).then(l.inverse());
}

struct WordCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};

/// After the flop rewrites and beta sliding: b_i is the psi-conjugate of
/// q_i, a the psi-conjugate of q_-, and c_i, d are psi_plus-conjugates of
/// closed algebraic loops at p_1 whose K-matrices are I and unipotent.
inline std::vector<WordCheck> two_basepoint_checks(int ell) {
  std::vector<WordCheck> out;
  const auto words = two_basepoint_words(ell);
  const auto X = StripNode::geom(Side::X);
  const auto XP = StripNode::geom(Side::XPlus);
  for (const auto& [name, w] : words) {
    const auto base = (name[0] == 'a' || name[0] == 'b') ? X : XP;
    const auto image = normalize(w);
    WordCheck c{name, true, image.render()};
    const auto fail = [&](const std::string& why) {
      c.ok = false;
      c.detail = why + ": " + image.render();
    };
    if (!(w.source() == base && w.closed())) {
      fail("not closed at " + base.render());
    } else if (name[0] == 'b' || name[0] == 'a') {
      const auto expected =
          name == "a" ? loop_q_minus(ell) : wall_loop(ell, std::stoll(name.substr(1)));
      if (!(image == normalize(conjugate_by(Letter::psi(), expected))))
        fail("expected psi-conjugate of " + expected.render());
    } else {
      const auto& ls = image.letters();
      const bool framed = ls.size() >= 2 && ls.front() == Letter::psi_plus() &&
                          ls.back() == Letter::psi_plus().inv();
      if (!framed) {
        fail("not a psi_plus-conjugate");
      } else {
        FunctorWord inner(image.period(), StripNode::algebraic(1),
                          std::vector<Letter>(ls.begin() + 1, ls.end() - 1));
        if (!inner.algebraic() || !inner.closed()) {
          fail("inner loop is not algebraic and closed");
        } else {
          const auto k = k_matrix(inner, ell);
          const bool ok = name[0] == 'c' ? k == Mat2::identity()
                                         : (k.det() == 1 && k.trace() == 2 && !(k == Mat2::identity()));
          if (!ok) fail("inner K-matrix " + k.render());
        }
      }
      if (name[0] == 'c') {
        for (const auto& l : w.letters())
          if (l.mutation() && l.index >= 0) fail("c word uses a non-negative wall");
      }
    }
    out.push_back(c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Word expressions: atoms joined by '.', meaning composition (rightmost acts
// first). Atoms: q<i>, qminus, qplus, phi_fwd(i), phi_bwd(i), beta, beta(j),
// psi, psi_plus, flop, flop_rev, tensor_x(k), tensor_xplus(k), inv(expr).

namespace detail {

struct Expr {
  enum Kind { Atom, Inv, Seq } kind = Atom;
  std::string name;
  std::optional<Index> arg;
  std::vector<Expr> parts;  // Inv: one child; Seq: written left to right
};

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Expr parse() {
    auto e = seq();
    skip_ws();
    if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    throw UsageError(fmt::format("word parse error at column {}: {}", pos_ + 1, what));
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Expr seq() {
    Expr e{Expr::Seq, {}, {}, {}};
    e.parts.push_back(atom());
    while (eat('.')) e.parts.push_back(atom());
    return e.parts.size() == 1 ? e.parts.front() : e;
  }
  Index integer() {
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    const std::string digits(s_.substr(start, pos_ - start));
    if (digits.empty() || digits == "-" || digits == "+") error("expected an integer");
    try {
      return std::stoll(digits);
    } catch (const std::out_of_range&) {
      error("integer out of range");
    }
  }
  Expr atom() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    std::string name(s_.substr(start, pos_ - start));
    if (name.empty()) error("expected a word atom");
    if (name == "inv") {
      if (!eat('(')) error("expected '(' after inv");
      Expr e{Expr::Inv, {}, {}, {seq()}};
      if (!eat(')')) error("expected ')'");
      return e;
    }
    Expr e{Expr::Atom, name, {}, {}};
    if (eat('(')) {
      e.arg = integer();
      if (!eat(')')) error("expected ')'");
    }
    return e;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

/// Builds the word for e either starting at `at` (from_start) or ending at
/// `at`.
class Builder {
 public:
  explicit Builder(int ell) : ell_(ell), n_(period_of(ell)) {}

  FunctorWord build(const Expr& e, const StripNode& at, bool from_start) const {
    switch (e.kind) {
      case Expr::Inv: return build(e.parts.front(), at, !from_start).inverse();
      case Expr::Seq: {
        if (from_start) {
          FunctorWord w(n_, at);
          for (auto it = e.parts.rbegin(); it != e.parts.rend(); ++it)
            w = w.then(build(*it, w.target(), true));
          return w;
        }
        FunctorWord w(n_, at);
        for (const auto& p : e.parts) w = build(p, w.source(), false).then(w);
        return w;
      }
      case Expr::Atom: break;
    }
    FunctorWord w = atom(e, at, from_start);
    const auto& end = from_start ? w.source() : w.target();
    if (!(end == at))
      throw DomainError(fmt::format("{} {} at {}, not at {}", e.name,
                                    from_start ? "starts" : "ends", end.render(), at.render()));
    return w;
  }

  /// Node a whole expression naturally starts at, when its first-acting atom
  /// fixes it.
  std::optional<StripNode> natural_source(const Expr& e) const {
    switch (e.kind) {
      case Expr::Seq: return natural_source(e.parts.back());
      case Expr::Inv: return natural_target(e.parts.front());
      case Expr::Atom: break;
    }
    if (e.name == "beta" && !e.arg) return std::nullopt;
    return atom(e, StripNode::algebraic(0), true).source();
  }
  std::optional<StripNode> natural_target(const Expr& e) const {
    switch (e.kind) {
      case Expr::Seq: return natural_target(e.parts.front());
      case Expr::Inv: return natural_source(e.parts.front());
      case Expr::Atom: break;
    }
    if (e.name == "beta" && !e.arg) return std::nullopt;
    return atom(e, StripNode::algebraic(0), true).target();
  }

 private:
  FunctorWord single(const Letter& l) const { return FunctorWord::of(n_, {l}); }

  Index need_arg(const Expr& e) const {
    if (!e.arg) throw UsageError(fmt::format("{} needs an integer argument", e.name));
    return *e.arg;
  }
  void no_arg(const Expr& e) const {
    if (e.arg) throw UsageError(fmt::format("{} takes no argument", e.name));
  }

  FunctorWord atom(const Expr& e, const StripNode& at, bool from_start) const {
    const auto& nm = e.name;
    if (nm == "qminus") return no_arg(e), loop_q_minus(ell_);
    if (nm == "qplus") return no_arg(e), loop_q_plus(ell_);
    if (nm.size() > 1 && nm[0] == 'q' &&
        nm.find_first_not_of("0123456789", 1) == std::string::npos) {
      no_arg(e);
      return loop_q(ell_, std::stoll(nm.substr(1)));
    }
    if (nm == "phi_fwd") return single(Letter::fwd(need_arg(e)));
    if (nm == "phi_bwd") return single(Letter::bwd(need_arg(e)));
    if (nm == "beta") {
      if (e.arg) return single(Letter::beta(*e.arg));
      if (at.geometric) throw DomainError("beta needs an algebraic node, got " + at.render());
      return single(Letter::beta(from_start ? at.j : at.j - n_));
    }
    if (nm == "psi") return no_arg(e), single(Letter::psi());
    if (nm == "psi_plus") return no_arg(e), single(Letter::psi_plus());
    if (nm == "flop") return no_arg(e), single(Letter::flop(Side::X));
    if (nm == "flop_rev") return no_arg(e), single(Letter::flop(Side::XPlus));
    if (nm == "tensor_x") return single(Letter::tensor_x(need_arg(e)));
    if (nm == "tensor_xplus") return single(Letter::tensor_x_plus(need_arg(e)));
    throw UsageError(fmt::format("unknown word atom '{}'", nm));
  }

  int ell_;
  Index n_;
};

}  // namespace detail

/// Parses and types a word expression. Evaluation starts at p_0 unless the
/// first-acting atom fixes another node.
inline FunctorWord parse_word(std::string_view text, int ell) {
  const auto expr = detail::Parser(text).parse();
  const detail::Builder b(ell);
  const auto start = b.natural_source(expr).value_or(StripNode::algebraic(0));
  return b.build(expr, start, true);
}

inline nlohmann::json node_json(const StripNode& n) { return n.render(); }

/// Word evaluation as emitted by the CLI.
inline nlohmann::json evaluate(std::string_view text, int ell) {
  const auto w = parse_word(text, ell);
  const auto r = reduce(w);
  nlohmann::json j = {{"schema", "flopkit/monodromy-eval/v1"},
                      {"ell", ell},
                      {"word", std::string(text)},
                      {"source", node_json(w.source())},
                      {"target", node_json(w.target())},
                      {"letters", w.size()},
                      {"reduced", r.render()},
                      {"reduced_letters", r.size()},
                      {"identity", r.empty()}};
  if (w.algebraic() && w.closed()) {
    j["k_matrix"] = k_matrix(w, ell).to_json();
  } else {
    j["k_matrix"] = nullptr;
  }
  return j;
}

}  // namespace flopkit::monodromy
