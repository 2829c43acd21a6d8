#include "isocoh/cone.hpp"

#include <algorithm>
#include <limits>
#include <mutex>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace isocoh {

namespace {

using Wide = __int128;
using Big = boost::multiprecision::cpp_int;

struct WideOverflow {};

inline Wide mul(Wide a, Wide b) {
  Wide r;
  if (__builtin_mul_overflow(a, b, &r)) throw WideOverflow{};
  return r;
}
inline Wide add(Wide a, Wide b) {
  Wide r;
  if (__builtin_add_overflow(a, b, &r)) throw WideOverflow{};
  return r;
}
inline Wide sub(Wide a, Wide b) {
  Wide r;
  if (__builtin_sub_overflow(a, b, &r)) throw WideOverflow{};
  return r;
}
inline Big mul(const Big& a, const Big& b) { return a * b; }
inline Big add(const Big& a, const Big& b) { return a + b; }
inline Big sub(const Big& a, const Big& b) { return a - b; }

inline Wide abs_value(Wide a) { return a < 0 ? -a : a; }
inline Big abs_value(const Big& a) { return a < 0 ? Big(-a) : a; }

template <class T>
T gcd_of(T a, T b) {
  a = abs_value(a);
  b = abs_value(b);
  while (b != 0) {
    T t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline bool fits(const Wide& v) {
  return v >= std::numeric_limits<Integer>::min() && v <= std::numeric_limits<Integer>::max();
}
inline bool fits(const Big& v) {
  return v >= std::numeric_limits<Integer>::min() && v <= std::numeric_limits<Integer>::max();
}
inline Integer narrow(const Wide& v) {
  if (!fits(v)) throw OverflowError("membership certificate does not fit in 64 bits");
  return static_cast<Integer>(v);
}
inline Integer narrow(const Big& v) {
  if (!fits(v)) throw OverflowError("membership certificate does not fit in 64 bits");
  return static_cast<Integer>(v);
}

// Final state of a phase-one solve. The basis inverse is kept fraction-free:
// B^{-1} = inverse / denominator with denominator > 0.
template <class T>
struct PhaseOneState {
  bool feasible = false;
  std::vector<int> row_sign;
  std::vector<std::size_t> basis;
  std::vector<T> inverse;  // row-major r x r
  T denominator = 1;
  std::vector<T> values;   // inverse * b, numerators of the basic solution
  std::vector<T> separator;
};

// Phase-one revised simplex for { lambda >= 0 : G lambda = d }. Rows are sign
// normalised so the right-hand side is non-negative, and one artificial per
// row starts basic. Bland's rule on both entering and leaving indices.
template <class T>
PhaseOneState<T> solve_phase_one(const std::vector<DivisorClass>& gens, std::size_t r,
                                 const DivisorClass& d) {
  const std::size_t m = gens.size();
  PhaseOneState<T> s;
  s.row_sign.resize(r);
  std::vector<T> rhs(r);
  for (std::size_t i = 0; i < r; ++i) {
    s.row_sign[i] = d[i] < 0 ? -1 : 1;
    rhs[i] = T(d[i] < 0 ? -static_cast<Wide>(d[i]) : static_cast<Wide>(d[i]));
  }
  auto entry = [&](std::size_t col, std::size_t row) -> T {
    if (col < m) return T(s.row_sign[row] * static_cast<Wide>(gens[col][row]));
    return T(col - m == row ? 1 : 0);
  };

  s.basis.resize(r);
  std::vector<char> basic(m + r, 0);
  for (std::size_t i = 0; i < r; ++i) {
    s.basis[i] = m + i;
    basic[m + i] = 1;
  }
  s.inverse.assign(r * r, T(0));
  for (std::size_t i = 0; i < r; ++i) s.inverse[i * r + i] = T(1);
  s.denominator = T(1);

  std::vector<T> y(r), w(r), next(r * r);
  s.values.assign(r, T(0));
  while (true) {
    bool zero_objective = true;
    for (std::size_t i = 0; i < r; ++i) {
      T v(0);
      for (std::size_t k = 0; k < r; ++k)
        if (rhs[k] != 0) v = add(v, mul(s.inverse[i * r + k], rhs[k]));
      s.values[i] = v;
      if (s.basis[i] >= m && v != 0) zero_objective = false;
    }
    if (zero_objective) {
      s.feasible = true;
      return s;
    }

    for (std::size_t k = 0; k < r; ++k) {
      T acc(0);
      for (std::size_t i = 0; i < r; ++i)
        if (s.basis[i] >= m) acc = add(acc, s.inverse[i * r + k]);
      y[k] = acc;
    }

    std::size_t entering = m;
    for (std::size_t j = 0; j < m && entering == m; ++j) {
      if (basic[j]) continue;
      T dot(0);
      for (std::size_t k = 0; k < r; ++k) {
        const Integer g = gens[j][k];
        if (g != 0) dot = add(dot, mul(y[k], T(s.row_sign[k] * static_cast<Wide>(g))));
      }
      if (dot > 0) entering = j;
    }
    if (entering == m) {
      // Optimal with positive artificial mass: -y (in original row signs)
      // separates d from every generator.
      s.separator.resize(r);
      T g(0);
      for (std::size_t k = 0; k < r; ++k) {
        s.separator[k] = s.row_sign[k] < 0 ? y[k] : T(0) - y[k];
        g = gcd_of(g, s.separator[k]);
      }
      if (g > 1)
        for (auto& v : s.separator) v /= g;
      s.feasible = false;
      return s;
    }

    for (std::size_t i = 0; i < r; ++i) {
      T v(0);
      for (std::size_t k = 0; k < r; ++k) {
        const T a = entry(entering, k);
        if (a != 0) v = add(v, mul(s.inverse[i * r + k], a));
      }
      w[i] = v;
    }
    std::size_t leave = r;
    for (std::size_t i = 0; i < r; ++i) {
      if (w[i] <= 0) continue;
      if (leave == r) {
        leave = i;
        continue;
      }
      const T lhs = mul(s.values[i], w[leave]);
      const T rhs_cmp = mul(s.values[leave], w[i]);
      if (lhs < rhs_cmp || (lhs == rhs_cmp && s.basis[i] < s.basis[leave])) leave = i;
    }
    if (leave == r) throw std::logic_error("phase-one simplex reported an unbounded ray");

    const T pivot = w[leave];
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t k = 0; k < r; ++k) {
        if (i == leave) {
          next[i * r + k] = s.inverse[i * r + k];
        } else {
          next[i * r + k] = sub(mul(s.inverse[i * r + k], pivot),
                                mul(w[i], s.inverse[leave * r + k])) /
                            s.denominator;
        }
      }
    }
    s.inverse.swap(next);
    s.denominator = pivot;
    if (s.denominator < 0) {
      s.denominator = T(0) - s.denominator;
      for (auto& v : s.inverse) v = T(0) - v;
    }
    basic[s.basis[leave]] = 0;
    basic[entering] = 1;
    s.basis[leave] = entering;
  }
}

template <class T>
MembershipCertificate to_certificate(const PhaseOneState<T>& s, std::size_t m) {
  MembershipCertificate cert;
  cert.member = s.feasible;
  if (s.feasible) {
    T g = s.denominator;
    for (std::size_t i = 0; i < s.basis.size(); ++i)
      if (s.basis[i] < m) g = gcd_of(g, s.values[i]);
    cert.multipliers.assign(m, 0);
    for (std::size_t i = 0; i < s.basis.size(); ++i)
      if (s.basis[i] < m) cert.multipliers[s.basis[i]] = narrow(T(s.values[i] / g));
    cert.denominator = narrow(T(s.denominator / g));
  } else {
    for (const auto& v : s.separator) cert.separator.push_back(narrow(v));
  }
  return cert;
}

}  // namespace

namespace detail {

struct MembershipMemo {
  struct Basis {
    std::vector<int> row_sign;
    std::vector<std::size_t> basis;
    std::vector<Wide> inverse;
  };

  static constexpr std::size_t kMaxBases = 48;
  static constexpr std::size_t kMaxSeparators = 8192;

  std::mutex mutex;
  std::vector<Basis> bases;
  std::vector<std::vector<Integer>> separators;
};

}  // namespace detail

namespace {

enum class MemoAnswer { unknown, member, not_member };

Wide dot(std::span<const Integer> a, std::span<const Integer> b) {
  Wide acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    acc = add(acc, mul(static_cast<Wide>(a[i]), static_cast<Wide>(b[i])));
  return acc;
}

MemoAnswer consult(detail::MembershipMemo& memo, const DivisorClass& d, std::size_t m) {
  const std::size_t r = d.rank();
  for (std::size_t idx = 0; idx < memo.separators.size(); ++idx) {
    if (dot(memo.separators[idx], d.coefficients()) < 0) {
      if (idx > 0) std::swap(memo.separators[idx], memo.separators[idx - 1]);
      return MemoAnswer::not_member;
    }
  }
  for (std::size_t idx = 0; idx < memo.bases.size(); ++idx) {
    const auto& b = memo.bases[idx];
    bool ok = true;
    for (std::size_t i = 0; i < r && ok; ++i) {
      Wide v = 0;
      for (std::size_t k = 0; k < r; ++k)
        if (d[k] != 0)
          v = add(v, mul(b.inverse[i * r + k], static_cast<Wide>(b.row_sign[k] * d[k])));
      ok = b.basis[i] >= m ? v == 0 : v >= 0;
    }
    if (ok) {
      if (idx > 0) std::swap(memo.bases[idx], memo.bases[0]);
      return MemoAnswer::member;
    }
  }
  return MemoAnswer::unknown;
}

void remember(detail::MembershipMemo& memo, const PhaseOneState<Wide>& s,
              const std::vector<DivisorClass>& gens) {
  if (s.feasible) {
    detail::MembershipMemo::Basis b{s.row_sign, s.basis, s.inverse};
    if (memo.bases.size() >= detail::MembershipMemo::kMaxBases) memo.bases.pop_back();
    memo.bases.insert(memo.bases.begin(), std::move(b));
    return;
  }
  std::vector<Integer> z;
  for (const auto& v : s.separator) {
    if (!fits(v)) return;
    z.push_back(static_cast<Integer>(v));
  }
  // A separator is only reusable if it is non-negative on every generator.
  for (const auto& g : gens)
    if (dot(z, g.coefficients()) < 0) throw std::logic_error("invalid separating functional");
  if (memo.separators.size() < detail::MembershipMemo::kMaxSeparators &&
      std::find(memo.separators.begin(), memo.separators.end(), z) == memo.separators.end())
    memo.separators.push_back(std::move(z));
}

}  // namespace

Cone::Cone(std::size_t dimension, std::vector<DivisorClass> generators)
    : dimension_(dimension),
      generators_(std::move(generators)),
      memo_(std::make_unique<detail::MembershipMemo>()) {
  for (const auto& g : generators_) {
    if (g.rank() != dimension_) throw RankMismatchError(dimension_, g.rank());
    if (g.is_zero()) throw std::invalid_argument("cone generators must be nonzero");
  }
}

Cone::~Cone() = default;
Cone::Cone(const Cone& other)
    : dimension_(other.dimension_),
      generators_(other.generators_),
      memo_(std::make_unique<detail::MembershipMemo>()) {}
Cone& Cone::operator=(const Cone& other) {
  if (this != &other) {
    dimension_ = other.dimension_;
    generators_ = other.generators_;
    memo_ = std::make_unique<detail::MembershipMemo>();
  }
  return *this;
}
Cone::Cone(Cone&&) noexcept = default;
Cone& Cone::operator=(Cone&&) noexcept = default;

MembershipCertificate Cone::certify(const DivisorClass& d) const {
  if (d.rank() != dimension_) throw RankMismatchError(dimension_, d.rank());
  try {
    return to_certificate(solve_phase_one<Wide>(generators_, dimension_, d),
                          generators_.size());
  } catch (const WideOverflow&) {
    return to_certificate(solve_phase_one<Big>(generators_, dimension_, d),
                          generators_.size());
  }
}

bool Cone::contains(const DivisorClass& d) const {
  if (d.rank() != dimension_) throw RankMismatchError(dimension_, d.rank());
  if (d.is_zero()) return true;
  if (generators_.empty()) return false;

  std::lock_guard lock(memo_->mutex);
  try {
    switch (consult(*memo_, d, generators_.size())) {
      case MemoAnswer::member: return true;
      case MemoAnswer::not_member: return false;
      case MemoAnswer::unknown: break;
    }
    auto state = solve_phase_one<Wide>(generators_, dimension_, d);
    remember(*memo_, state, generators_);
    return state.feasible;
  } catch (const WideOverflow&) {
    return solve_phase_one<Big>(generators_, dimension_, d).feasible;
  }
}

bool cone_contains(const Cone& cone, const DivisorClass& d) { return cone.contains(d); }

}  // namespace isocoh
