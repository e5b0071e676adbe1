#pragma once

// Indefinite integral binary quadratic forms [A,B,C] = Ax^2 + Bxy + Cy^2: the right action
// of SL(2,Z), reduction, cycles of reduced forms, Pell units and stabilizers.

#include "geozeta/bigint.hpp"
#include "geozeta/matrix.hpp"
#include "geozeta/quad_exact.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace geozeta {

/// Raised when an iteration guard trips; indicates an algorithm bug, never expected.
class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Primitive integral form with positive nonsquare discriminant.
class Form {
 public:
  Form(BigInt a, BigInt b, BigInt c)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), disc_(b_ * b_ - 4 * a_ * c_) {
    if (disc_ <= 0)
      throw std::invalid_argument("form " + str() + " is not indefinite (D = " + disc_.str() + ")");
    if (is_square(disc_))
      throw std::invalid_argument("form " + str() + " has square discriminant " + disc_.str());
    if (gcd(a_, b_, c_) != 1) throw std::invalid_argument("form " + str() + " is not primitive");
  }

  /// Parses "A,B,C" (signed decimal integers, no spaces).
  static Form parse(std::string_view text) {
    std::vector<BigInt> parts;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = text.find(',', start);
      const std::string_view tok = text.substr(start, comma == std::string_view::npos
                                                          ? std::string_view::npos
                                                          : comma - start);
      parts.push_back(parse_integer(tok));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (parts.size() != 3)
      throw std::invalid_argument("form literal must be \"A,B,C\", got \"" + std::string(text) +
                                  "\"");
    return Form(parts[0], parts[1], parts[2]);
  }

  const BigInt& A() const { return a_; }
  const BigInt& B() const { return b_; }
  const BigInt& C() const { return c_; }
  const BigInt& discriminant() const { return disc_; }

  Form operator-() const { return Form(Trusted{}, -a_, -b_, -c_, disc_); }

  /// Value at the integer point (x, y).
  BigInt operator()(const BigInt& x, const BigInt& y) const {
    return a_ * x * x + b_ * x * y + c_ * y * y;
  }

  std::string str() const { return a_.str() + "," + b_.str() + "," + c_.str(); }
  friend std::ostream& operator<<(std::ostream& os, const Form& q) { return os << q.str(); }

  friend bool operator==(const Form& x, const Form& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_;
  }
  friend bool operator<(const Form& x, const Form& y) {
    return std::tie(x.a_, x.b_, x.c_) < std::tie(y.a_, y.b_, y.c_);
  }

 private:
  struct Trusted {};
  Form(Trusted, BigInt a, BigInt b, BigInt c, BigInt disc)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), disc_(std::move(disc)) {}

  static BigInt parse_integer(std::string_view tok) {
    std::size_t i = 0;
    if (!tok.empty() && (tok[0] == '-' || tok[0] == '+')) i = 1;
    if (i == tok.size()) throw std::invalid_argument("malformed integer \"" + std::string(tok) + "\"");
    for (std::size_t j = i; j < tok.size(); ++j)
      if (tok[j] < '0' || tok[j] > '9')
        throw std::invalid_argument("malformed integer \"" + std::string(tok) + "\"");
    return BigInt(std::string(tok[0] == '+' ? tok.substr(1) : tok));
  }

  friend Form transform(const Form& q, const UnimodularMatrix& g);

  BigInt a_, b_, c_, disc_;
};

/// Form with real coefficients and no integrality or discriminant restriction.
struct RealForm {
  double A = 0, B = 0, C = 0;

  static RealForm from(const Form& q) { return {to_double(q.A()), to_double(q.B()), to_double(q.C())}; }

  double discriminant() const { return B * B - 4 * A * C; }
};

inline const BigInt& discriminant(const Form& q) { return q.discriminant(); }

/// Q|g (x, y) = Q(ax + by, cx + dy).
inline Form transform(const Form& q, const UnimodularMatrix& g) {
  const BigInt &a = g.a(), &b = g.b(), &c = g.c(), &d = g.d();
  BigInt na = q.A() * a * a + q.B() * a * c + q.C() * c * c;
  BigInt nb = 2 * q.A() * a * b + q.B() * (a * d + b * c) + 2 * q.C() * c * d;
  BigInt nc = q.A() * b * b + q.B() * b * d + q.C() * d * d;
  return Form(Form::Trusted{}, std::move(na), std::move(nb), std::move(nc), q.discriminant());
}

/// Left action gQ = Q|g^{-1}.
inline Form act(const UnimodularMatrix& g, const Form& q) { return transform(q, g.inverse()); }

/// (-B + sqrt(D)) / (2A); the root that moves equivariantly under the action.
inline QuadExact first_root(const Form& q) {
  return QuadExact(-q.B(), 1, 2 * q.A(), q.discriminant());
}

/// Roots ordered (x', x) with x' < x.
inline std::pair<QuadExact, QuadExact> roots(const Form& q) {
  QuadExact w = first_root(q);
  QuadExact wc = w.conj();
  if (q.A() > 0) return {std::move(wc), std::move(w)};
  return {std::move(w), std::move(wc)};
}

/// N_Q = ((-B, -2C), (2A, B)).
inline IntMatrix companion(const Form& q) { return {-q.B(), -2 * q.C(), 2 * q.A(), q.B()}; }

/// A > 0 and 0 < x' < 1 < x; equivalent to A > 0, C > 0, A + B + C < 0.
inline bool is_reduced(const Form& q) {
  return q.A() > 0 && q.C() > 0 && q.A() + q.B() + q.C() < 0;
}

struct ReductionResult {
  Form reduced;
  UnimodularMatrix transform;  // reduced == transform(input, transform)
  std::size_t steps = 0;
};

namespace detail {

inline std::size_t reduction_guard(const Form& q) {
  const std::size_t bits =
      std::max({bit_length(q.A()), bit_length(q.B()), bit_length(q.C())});
  return 64 + 8 * bits;
}

}  // namespace detail

/// Minus-continued-fraction reduction driven by the first root w: m = ceil(w), w <- 1/(m - w).
/// Runs of m = 2 are taken in one jump, stopping exactly where the step-by-step iteration
/// would first hit a reduced form.
inline ReductionResult reduce(const Form& q) {
  Form cur = q;
  UnimodularMatrix g;
  std::size_t steps = 0;
  const std::size_t guard = detail::reduction_guard(q);
  for (std::size_t iter = 0; !is_reduced(cur); ++iter) {
    if (iter >= guard) throw GuardExceeded("reduce: guard exceeded for " + q.str());
    const QuadExact w = first_root(cur);
    const BigInt m = w.ceil();
    BigInt run = 1;
    if (m == 2) {
      // With u = 1/(w-1) each m=2 step maps u -> u-1; the run lasts floor(u) steps, and the
      // conjugate enters (0,1) once the step count exceeds u' + 1.
      const QuadExact one = QuadExact::integer(1, w.radicand());
      const QuadExact u = (w - one).inv();
      run = u.floor();
      const BigInt first_reduced = std::max(BigInt(1), BigInt(u.conj().floor() + 2));
      if (first_reduced < run) run = first_reduced;
    }
    const UnimodularMatrix s = run == 1 ? UnimodularMatrix::step(m)
                                        : UnimodularMatrix(run + 1, -run, run, 1 - run);
    cur = transform(cur, s);
    g = g * s;
    steps += static_cast<std::size_t>(run);
  }
  return {std::move(cur), std::move(g), steps};
}

/// Cycle of reduced forms Q_0, ..., Q_{r-1} with Q_j = Q_{j-1} | M(m_j).
struct Cycle {
  std::vector<Form> forms;
  std::vector<BigInt> quotients;

  std::size_t size() const { return forms.size(); }

  bool contains(const Form& q) const {
    return std::find(forms.begin(), forms.end(), q) != forms.end();
  }
};

inline Cycle cycle_of(const Form& q) {
  if (!is_reduced(q)) throw std::invalid_argument("cycle_of: form " + q.str() + " is not reduced");
  Cycle cyc;
  const std::size_t guard = 64 + 8 * bit_length(q.discriminant()) +
                            4 * static_cast<std::size_t>(to_double(q.discriminant()));
  Form cur = q;
  do {
    if (cyc.forms.size() >= guard) throw GuardExceeded("cycle_of: guard exceeded for " + q.str());
    const BigInt m = first_root(cur).ceil();
    cyc.forms.push_back(cur);
    cyc.quotients.push_back(m);
    cur = transform(cur, UnimodularMatrix::step(m));
  } while (!(cur == q));
  return cyc;
}

/// M(m_1) ... M(m_r).
inline UnimodularMatrix cycle_matrix(const Cycle& cyc) {
  UnimodularMatrix g;
  for (const BigInt& m : cyc.quotients) g = g * UnimodularMatrix::step(m);
  return g;
}

/// D > 0, nonsquare, D = 0 or 1 mod 4.
inline void validate_discriminant(const BigInt& d) {
  if (d <= 0) throw std::invalid_argument("discriminant must be positive, got " + d.str());
  const BigInt r = d % 4;
  if (r != 0 && r != 1)
    throw std::invalid_argument("discriminant " + d.str() + " is not 0 or 1 mod 4");
  if (is_square(d)) throw std::invalid_argument("discriminant " + d.str() + " is a square");
}

inline bool is_squarefree(const BigInt& n) {
  for (BigInt f = 2; f * f <= n; ++f)
    if (n % (f * f) == 0) return false;
  return true;
}

/// Discriminant of the maximal order of a real quadratic field.
inline bool is_fundamental_discriminant(const BigInt& d) {
  if (d <= 1 || is_square(d)) return false;
  if (d % 4 == 1) return is_squarefree(d);
  if (d % 4 != 0) return false;
  const BigInt m = d / 4;
  const BigInt r = m % 4;
  return (r == 2 || r == 3) && is_squarefree(m);
}

inline void validate_fundamental(const BigInt& d) {
  validate_discriminant(d);
  if (!is_fundamental_discriminant(d))
    throw std::invalid_argument("discriminant " + d.str() + " is not fundamental");
}

/// All primitive reduced forms of discriminant D, sorted by (A, B, C).
inline std::vector<Form> enumerate_reduced(const BigInt& disc) {
  validate_discriminant(disc);
  const std::int64_t d = to_int64(disc);
  std::vector<Form> out;
  // Reduced: A, C >= 1 and A + C < |B|; then (A - C)^2 < D and |B| <= (D + 1) / 2.
  std::int64_t b = to_int64(isqrt(disc)) + 1;
  if ((b - d) % 2 != 0) ++b;
  for (; b <= (d + 1) / 2; b += 2) {
    const std::int64_t n = (b * b - d) / 4;
    for (std::int64_t a = 1; a * a <= n; ++a) {
      if (n % a != 0) continue;
      const std::int64_t c = n / a;
      if (a + c >= b) continue;
      for (const auto& [x, y] : {std::pair{a, c}, std::pair{c, a}}) {
        if (std::gcd(std::gcd(x, b), y) != 1) continue;
        out.emplace_back(x, -b, y);
        if (x == y) break;
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct PellSolution {
  BigInt v, u;  // v^2 - D u^2 = 4
};

struct FundamentalUnit {
  QuadExact eps;  // (t + u sqrt(D)) / 2, smallest unit > 1 of the order of discriminant D
  int normSign = 1;
  int f = 1;  // eps_Pell = eps^f
};

namespace detail {

/// Smallest unit > 1 of the order Z[(δ + √D)/2], found as the first regular continued
/// fraction convergent p/q of ω = (δ + √D)/2 with N(p - qω) = ±1. Returns (t, q, norm) with
/// unit = (t + q√D)/2.
inline std::tuple<BigInt, BigInt, int> first_unit(const BigInt& d) {
  const BigInt delta = d % 2;
  const QuadExact omega(delta, 1, 2, d);
  QuadExact x = omega;
  BigInt p_prev = 1, p_prev2 = 0, q_prev = 0, q_prev2 = 1;
  const BigInt c0 = (delta * delta - d) / 4;
  for (std::size_t k = 0;; ++k) {
    if (k > 64 + 8 * static_cast<std::size_t>(to_double(d)))
      throw GuardExceeded("fundamental unit search exceeded guard for D = " + d.str());
    const BigInt a = x.floor();
    const BigInt p = a * p_prev + p_prev2;
    const BigInt q = a * q_prev + q_prev2;
    const BigInt norm = p * p - delta * p * q + c0 * q * q;
    if (norm == 1 || norm == -1) return {2 * p - q * delta, q, norm == 1 ? 1 : -1};
    p_prev2 = p_prev;
    p_prev = p;
    q_prev2 = q_prev;
    q_prev = q;
    x = (x - QuadExact::integer(a, d)).inv();
  }
}

}  // namespace detail

inline FundamentalUnit fundamental_unit(const BigInt& d) {
  validate_discriminant(d);
  auto [t, q, norm] = detail::first_unit(d);
  return {QuadExact(t, q, 2, d), norm, norm == 1 ? 1 : 2};
}

/// Smallest positive solution of v^2 - D u^2 = 4.
inline PellSolution pell_fundamental(const BigInt& d) {
  validate_discriminant(d);
  auto [t, q, norm] = detail::first_unit(d);
  if (norm == 1) return {t, q};
  // Square of a norm -1 unit (t + q√D)/2.
  return {(t * t + d * q * q) / 2, t * q};
}

/// (v/2) I + (u/2) N_Q.
inline UnimodularMatrix unit_matrix(const Form& q, const BigInt& v, const BigInt& u) {
  if ((v - q.B() * u) % 2 != 0) throw std::invalid_argument("unit_matrix: parity mismatch");
  return UnimodularMatrix((v - q.B() * u) / 2, -q.C() * u, q.A() * u, (v + q.B() * u) / 2);
}

/// Generator gamma_Q of the stabilizer of Q.
inline UnimodularMatrix stabilizer_generator(const Form& q) {
  const PellSolution pell = pell_fundamental(q.discriminant());
  return unit_matrix(q, pell.v, pell.u);
}

/// Narrow classes (cycles) of a discriminant, optionally grouped into wide classes.
struct ClassTable {
  BigInt D;
  std::vector<Cycle> cycles;
  /// Unordered pairs (i, j), i <= j, of cycles in the same wide class; i == j when the wide
  /// class holds a single narrow class.
  std::vector<std::pair<std::size_t, std::size_t>> widePairs;
  int f = 0;  // eps_Pell = eps_fund^f; 0 when wide data is not populated

  std::size_t cycle_index(const Form& q) const {
    for (std::size_t i = 0; i < cycles.size(); ++i)
      if (cycles[i].contains(q)) return i;
    throw std::invalid_argument("form " + q.str() + " is not in any cycle of D = " + D.str());
  }
};

inline ClassTable narrow_classes(const BigInt& d) {
  ClassTable table;
  table.D = d;
  const std::vector<Form> forms = enumerate_reduced(d);
  std::vector<bool> seen(forms.size(), false);
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (seen[i]) continue;
    Cycle cyc = cycle_of(forms[i]);
    for (const Form& f : cyc.forms) {
      const auto it = std::lower_bound(forms.begin(), forms.end(), f);
      if (it == forms.end() || !(*it == f))
        throw std::logic_error("cycle member " + f.str() + " missing from enumeration");
      seen[static_cast<std::size_t>(it - forms.begin())] = true;
    }
    table.cycles.push_back(std::move(cyc));
  }
  return table;
}

/// [-A, B, -C]: same lattice 2AZ + (-B + sqrt D)Z with a generator of opposite norm sign,
/// i.e. the other narrow class inside the same wide class.
inline Form sign_twist(const Form& q) { return Form(-q.A(), q.B(), -q.C()); }

inline ClassTable wide_class_table(const BigInt& d) {
  validate_fundamental(d);
  ClassTable table = narrow_classes(d);
  const FundamentalUnit unit = fundamental_unit(d);
  table.f = unit.f;
  std::vector<bool> paired(table.cycles.size(), false);
  for (std::size_t i = 0; i < table.cycles.size(); ++i) {
    if (paired[i]) continue;
    std::size_t j = i;
    if (unit.normSign == 1) {
      j = table.cycle_index(reduce(sign_twist(table.cycles[i].forms.front())).reduced);
    }
    paired[i] = paired[j] = true;
    table.widePairs.emplace_back(std::min(i, j), std::max(i, j));
  }
  return table;
}

}  // namespace geozeta
