#pragma once
// Symbolic sheaves supported on the flopping curve C: thickenings O_{kC},
// their dualizing sheaves w_{kC}, the extension Z and its dual Z^w, with line
// bundle twists and homological shifts. Expressions are kept in a normal form
// so that identities between them are plain equality.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>

#include "flopkit/error.hpp"
#include "flopkit/numerics.hpp"

namespace flopkit::helix {

using numerics::Index;

enum class Base {
  CurveTwist,  // O_C(a); the twist is folded into a
  Thick,       // O_{kC}, k >= 2
  DualThick,   // w_{kC}, k >= 3 once normalized
  Zed,         // Z, the extension of O_{2C} by O_{3C}
  ZedOmega,    // Z^w = D(Z)[-1]
};

class SheafExpr {
 public:
  /// O_C(a)
  static SheafExpr curve(Index a) { return SheafExpr(Base::CurveTwist, a, 0, 0); }
  /// O_{kC}
  static SheafExpr thick(Index k) { return raw(Base::Thick, k, 0, 0).normalized(); }
  /// w_{kC}
  static SheafExpr dual_thick(Index k) { return raw(Base::DualThick, k, 0, 0).normalized(); }
  static SheafExpr zed() { return SheafExpr(Base::Zed, 0, 0, 0); }
  static SheafExpr zed_omega() { return SheafExpr(Base::ZedOmega, 0, 0, 0); }

  /// An expression exactly as given, without applying the rewrite rules.
  static SheafExpr raw(Base base, Index k_or_a, Index twist, Index shift) {
    if ((base == Base::Thick || base == Base::DualThick) && k_or_a < 1)
      throw DomainError(fmt::format("thickening order {} must be positive", k_or_a));
    return SheafExpr(base, k_or_a, twist, shift);
  }

  Base base() const { return base_; }
  Index k_or_a() const { return k_or_a_; }
  Index twist() const { return twist_; }
  Index shift() const { return shift_; }

  /// Tensor by O(m).
  SheafExpr twisted(Index m) const {
    return SheafExpr(base_, k_or_a_, twist_ + m, shift_).normalized();
  }
  /// Homological shift [n].
  SheafExpr shifted(Index n) const {
    return SheafExpr(base_, k_or_a_, twist_, shift_ + n).normalized();
  }
  /// The same sheaf with twist and shift removed.
  SheafExpr untwisted_base() const {
    auto e = normalized();
    e.shift_ = 0;
    if (e.base_ == Base::CurveTwist) {
      e.k_or_a_ = 0;
    } else {
      e.twist_ = 0;
    }
    return e;
  }

  /// Rewrites w_C to O_C(-2), w_{2C} to O_{2C}(-1), O_{1C} to O_C and folds
  /// twists of O_C into its degree. Z and Z^w carry no order.
  SheafExpr normalized() const {
    SheafExpr e = *this;
    if (e.base_ == Base::DualThick && e.k_or_a_ == 1) {
      e = SheafExpr(Base::CurveTwist, -2, e.twist_, e.shift_);
    } else if (e.base_ == Base::DualThick && e.k_or_a_ == 2) {
      e = SheafExpr(Base::Thick, 2, e.twist_ - 1, e.shift_);
    } else if (e.base_ == Base::Thick && e.k_or_a_ == 1) {
      e = SheafExpr(Base::CurveTwist, 0, e.twist_, e.shift_);
    }
    if (e.base_ == Base::CurveTwist) {
      e.k_or_a_ += e.twist_;
      e.twist_ = 0;
    } else if (e.base_ == Base::Zed || e.base_ == Base::ZedOmega) {
      e.k_or_a_ = 0;
    }
    return e;
  }

  bool is_normal() const { return normalized() == *this; }

  bool operator==(const SheafExpr&) const = default;

  /// Length-context check: thickenings up to l, Z and Z^w only for l = 5, 6.
  void validate(int ell) const {
    numerics::check_length(ell);
    if ((base_ == Base::Thick || base_ == Base::DualThick) && k_or_a_ > ell)
      throw DomainError(fmt::format("{} needs length >= {}, got {}", render(), k_or_a_, ell));
    if ((base_ == Base::Zed || base_ == Base::ZedOmega) && ell < 5)
      throw DomainError(fmt::format("{} only exists for length 5 or 6", render()));
  }

  std::string render() const {
    std::string s;
    switch (base_) {
      case Base::CurveTwist:
        s = k_or_a_ == 0 ? "O_C" : fmt::format("O_C({})", k_or_a_);
        break;
      case Base::Thick: s = fmt::format("O_{{{}C}}", k_or_a_); break;
      case Base::DualThick: s = fmt::format("w_{{{}C}}", k_or_a_); break;
      case Base::Zed: s = "Z"; break;
      case Base::ZedOmega: s = "Z^w"; break;
    }
    if (base_ != Base::CurveTwist && twist_ != 0) s += fmt::format("({})", twist_);
    if (shift_ != 0) s += fmt::format("[{}]", shift_);
    return s;
  }

  nlohmann::json to_json() const {
    static constexpr const char* names[] = {"O_C", "O_kC", "w_kC", "Z", "Z^w"};
    return {{"base", names[static_cast<int>(base_)]},
            {"k_or_a", k_or_a_},
            {"twist", twist_},
            {"shift", shift_}};
  }

 private:
  SheafExpr(Base b, Index k, Index t, Index s) : base_(b), k_or_a_(k), twist_(t), shift_(s) {}

  Base base_;
  Index k_or_a_;
  Index twist_;
  Index shift_;
};

inline std::ostream& operator<<(std::ostream& os, const SheafExpr& e) { return os << e.render(); }

/// Grothendieck duality on expressions:
///   D(O_{kC}) = w_{kC}[1], D(O_C(a)) = O_C(-2-a)[1], D(Z) = Z^w[1],
///   D(F(m)) = D(F)(-m), D(F[n]) = D(F)[-n].
inline SheafExpr dualize(const SheafExpr& e) {
  const auto f = e.normalized();
  SheafExpr base = SheafExpr::curve(0);
  switch (f.base()) {
    case Base::CurveTwist: base = SheafExpr::curve(-2 - f.k_or_a()).shifted(1); break;
    case Base::Thick: base = SheafExpr::dual_thick(f.k_or_a()).shifted(1); break;
    case Base::DualThick: base = SheafExpr::thick(f.k_or_a()).shifted(1); break;
    case Base::Zed: base = SheafExpr::zed_omega().shifted(1); break;
    case Base::ZedOmega: base = SheafExpr::zed().shifted(1); break;
  }
  return base.twisted(-f.twist()).shifted(-f.shift());
}

/// Class in K_0 of sheaves supported on C, in the basis ([O_C(-1)], [O_pt]).
struct KClass {
  Index c = 0;
  Index p = 0;

  KClass operator+(const KClass& o) const { return {c + o.c, p + o.p}; }
  KClass operator-(const KClass& o) const { return {c - o.c, p - o.p}; }
  KClass operator-() const { return {-c, -p}; }
  friend KClass operator*(Index s, const KClass& k) { return {s * k.c, s * k.p}; }
  bool operator==(const KClass&) const = default;

  /// Tensor by O(m).
  KClass twisted(Index m) const { return {c, p + m * c}; }
  /// Image under duality.
  KClass dual() const { return {-c, p}; }

  std::string render() const { return fmt::format("({},{})", c, p); }
};

inline std::ostream& operator<<(std::ostream& os, const KClass& k) { return os << k.render(); }

/// Works on raw as well as normalized expressions, so that each rewrite rule
/// can be checked to preserve the class.
inline KClass kclass(const SheafExpr& e) {
  KClass k;
  switch (e.base()) {
    case Base::CurveTwist: k = {1, e.k_or_a() + 1}; break;
    case Base::Thick: k = {e.k_or_a(), 1}; break;
    case Base::DualThick: k = {e.k_or_a(), -1}; break;
    case Base::Zed: k = {5, 2}; break;
    case Base::ZedOmega: k = {5, -2}; break;
  }
  k = k.twisted(e.twist());
  return (e.shift() % 2 == 0) ? k : -k;
}

/// S_0 .. S_{N-1}.
inline std::vector<SheafExpr> base_region(int ell) {
  numerics::check_length(ell);
  std::vector<SheafExpr> s{SheafExpr::curve(-1)};
  for (int k = ell; k >= 3; --k) s.push_back(SheafExpr::thick(k));
  if (ell >= 5) s.push_back(SheafExpr::zed());
  if (ell >= 2) s.push_back(SheafExpr::thick(2));
  if (ell >= 5) s.push_back(SheafExpr::zed_omega().twisted(1));
  for (int k = 3; k <= ell; ++k) s.push_back(SheafExpr::dual_thick(k).twisted(1));
  if (static_cast<Index>(s.size()) != numerics::for_length(ell).period())
    throw DomainError(fmt::format("simples region for length {} has size {}", ell, s.size()));
  return s;
}

/// S_i from the base region and S_{i+N} = S_i (x) O(1).
inline SheafExpr simple_by_translation(Index i, int ell) {
  const auto region = base_region(ell);
  const auto n = static_cast<Index>(region.size());
  const Index r = numerics::floor_mod(i, n);
  return region[static_cast<std::size_t>(r)].twisted((i - r) / n);
}

/// S_{-i} = D(S_i)[-1], for i > 0 taken from the translation rule.
inline SheafExpr simple_by_duality(Index i, int ell) {
  if (i >= 0) return simple_by_translation(i, ell);
  return dualize(simple_by_translation(-i, ell)).shifted(-1);
}

/// The i-th member of the simples helix. For negative i both generation rules
/// are run and must agree.
inline SheafExpr simple_at(Index i, int ell) {
  auto s = simple_by_translation(i, ell);
  if (i < 0) {
    auto d = simple_by_duality(i, ell);
    if (!(d == s))
      throw DomainError(fmt::format("S_{} for length {}: translation gives {}, duality gives {}", i,
                                    ell, s.render(), d.render()));
  }
  return s;
}

struct TiltDescriptor {
  Index i = 0;
  SheafExpr slot0 = SheafExpr::curve(0);
  SheafExpr slot1 = SheafExpr::curve(0);
  std::pair<int, int> projective_ranks;

  bool operator==(const TiltDescriptor&) const = default;
};

namespace detail {

inline TiltDescriptor parity_descriptor(Index i, int ell) {
  const auto prev = simple_at(i - 1, ell).shifted(1);
  const auto cur = simple_at(i, ell);
  const bool even = numerics::floor_mod(i, 2) == 0;
  return {i, even ? prev : cur, even ? cur : prev, numerics::projective_ranks(i, ell)};
}

}  // namespace detail

/// Ordered simples (S_0 slot, S_1 slot) of the i-th tilt. For i >= 0 the slot
/// is fixed by parity; for i < 0 the descriptor is the dual of the one at
/// 1 - i, and must contain {S_{i-1}[1], S_i}.
inline TiltDescriptor tilt_descriptor(Index i, int ell) {
  if (i >= 0) return detail::parity_descriptor(i, ell);
  const auto mirror = detail::parity_descriptor(1 - i, ell);
  TiltDescriptor t{i, dualize(mirror.slot0), dualize(mirror.slot1),
                   numerics::projective_ranks(i, ell)};
  const auto prev = simple_at(i - 1, ell).shifted(1);
  const auto cur = simple_at(i, ell);
  const bool same_set = (t.slot0 == prev && t.slot1 == cur) || (t.slot0 == cur && t.slot1 == prev);
  if (!same_set)
    throw DomainError(fmt::format("heart {} (length {}): dual simples {}, {} are not {{{}, {}}}", i,
                                  ell, t.slot0.render(), t.slot1.render(), prev.render(),
                                  cur.render()));
  return t;
}

struct CheckResult {
  bool ok = true;
  std::string diagnostic;

  explicit operator bool() const { return ok; }
  void fail(const std::string& msg) {
    ok = false;
    if (!diagnostic.empty()) diagnostic += "; ";
    diagnostic += msg;
  }
};

/// Translation and duality laws over i in [-2N, 2N], comparing normal forms
/// computed from the base region alone. For l >= 2 also checks that w_{2C}
/// and O_{2C}(-1) agree as expressions and in K_0.
inline CheckResult consistency_check(int ell) {
  CheckResult r;
  const Index n = numerics::for_length(ell).period();
  for (Index i = -2 * n; i <= 2 * n; ++i) {
    const auto s = simple_by_translation(i, ell);
    const auto up = simple_by_translation(i + n, ell);
    if (!(up == s.twisted(1)))
      r.fail(fmt::format("S_{} = {} but S_{}(1) = {}", i + n, up.render(), i, s.twisted(1).render()));
    const auto mirror = simple_by_translation(-i, ell);
    const auto dual = dualize(s).shifted(-1);
    if (!(mirror == dual))
      r.fail(fmt::format("S_{} = {} but D(S_{})[-1] = {}", -i, mirror.render(), i, dual.render()));
    if (!s.is_normal()) r.fail(fmt::format("S_{} = {} is not in normal form", i, s.render()));
  }
  if (ell >= 2) {
    const auto raw = SheafExpr::raw(Base::DualThick, 2, 0, 0);
    const auto target = SheafExpr::thick(2).twisted(-1);
    if (!(raw.normalized() == target) || kclass(raw) != kclass(target))
      r.fail(fmt::format("w_{{2C}} normalizes to {}, expected {}", raw.normalized().render(),
                         target.render()));
  }
  return r;
}

/// Expands the simple classes of heart i in the simple basis of heart i+1:
/// for i even, [slot1_i] = -[slot1_{i+1}] and
/// [slot0_i] = [slot0_{i+1}] + n_i [slot1_{i+1}]; slots swap for i odd.
inline CheckResult mutation_class_check(Index i, int ell) {
  CheckResult r;
  const auto here = tilt_descriptor(i, ell);
  const auto next = tilt_descriptor(i + 1, ell);
  const Index n = numerics::n_at(i, ell);
  const bool even = numerics::floor_mod(i, 2) == 0;

  const KClass fixed_here = kclass(even ? here.slot1 : here.slot0);
  const KClass fixed_next = kclass(even ? next.slot1 : next.slot0);
  const KClass moved_here = kclass(even ? here.slot0 : here.slot1);
  const KClass moved_next = kclass(even ? next.slot0 : next.slot1);

  if (fixed_here != -fixed_next)
    r.fail(fmt::format("i={}: shifted simple {} != -{}", i, fixed_here.render(),
                       fixed_next.render()));
  const KClass expansion = moved_next + n * fixed_next;
  if (moved_here != expansion)
    r.fail(fmt::format("i={}: {} != {} + {}*{} = {}", i, moved_here.render(), moved_next.render(),
                       n, fixed_next.render(), expansion.render()));
  return r;
}

/// Duality sends the ordered simples of heart 1-i to those of heart i, and
/// translation by O(1) sends heart i to heart i+N, swapping the slots
/// exactly when l = 1.
inline CheckResult duality_closure_check(int ell) {
  CheckResult r;
  const Index n = numerics::for_length(ell).period();
  for (Index i = -2 * n; i <= 2 * n; ++i) {
    // parity rule on both sides, so negative hearts are checked against it
    const auto here = detail::parity_descriptor(i, ell);
    const auto mirror = detail::parity_descriptor(1 - i, ell);
    if (!(dualize(mirror.slot0) == here.slot0 && dualize(mirror.slot1) == here.slot1))
      r.fail(fmt::format("duality does not carry heart {} to heart {} in order", 1 - i, i));

    const auto later = detail::parity_descriptor(i + n, ell);
    const auto t0 = here.slot0.twisted(1);
    const auto t1 = here.slot1.twisted(1);
    const bool swap = ell == 1;
    const bool ok = swap ? (later.slot0 == t1 && later.slot1 == t0)
                         : (later.slot0 == t0 && later.slot1 == t1);
    if (!ok) r.fail(fmt::format("translation of heart {} does not give heart {}", i, i + n));
  }
  return r;
}

}  // namespace flopkit::helix
