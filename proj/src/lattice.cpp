#include "isocoh/lattice.hpp"

#include <charconv>

#include "isocoh/cone.hpp"

namespace isocoh {

RankMismatchError::RankMismatchError(std::size_t expected, std::size_t actual)
    : LatticeError("rank mismatch: expected a class of length " +
                   std::to_string(expected) + ", got " +
                   std::to_string(actual)),
      expected_(expected),
      actual_(actual) {}

namespace checked {

Integer add(Integer a, Integer b) {
  Integer r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
  return r;
}

Integer sub(Integer a, Integer b) {
  Integer r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
  return r;
}

Integer mul(Integer a, Integer b) {
  Integer r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
  return r;
}

Integer neg(Integer a) { return sub(0, a); }

Integer ceil_div(Integer a, Integer b) {
  if (a < 0 || b <= 0) throw std::invalid_argument("ceil_div expects a >= 0 and b > 0");
  return sub(add(a, b), 1) / b;
}

}  // namespace checked

DivisorClass DivisorClass::unit(std::size_t rank, std::size_t index) {
  DivisorClass d = zero(rank);
  d.coeffs_.at(index) = 1;
  return d;
}

bool DivisorClass::is_zero() const {
  for (Integer c : coeffs_)
    if (c != 0) return false;
  return true;
}

DivisorClass& DivisorClass::operator+=(const DivisorClass& other) {
  if (other.rank() != rank()) throw RankMismatchError(rank(), other.rank());
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    coeffs_[i] = checked::add(coeffs_[i], other.coeffs_[i]);
  return *this;
}

DivisorClass& DivisorClass::operator-=(const DivisorClass& other) {
  if (other.rank() != rank()) throw RankMismatchError(rank(), other.rank());
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    coeffs_[i] = checked::sub(coeffs_[i], other.coeffs_[i]);
  return *this;
}

DivisorClass DivisorClass::operator-() const {
  DivisorClass r = *this;
  for (Integer& c : r.coeffs_) c = checked::neg(c);
  return r;
}

DivisorClass operator*(Integer k, const DivisorClass& d) {
  DivisorClass r = d;
  for (Integer& c : r.coeffs_) c = checked::mul(k, c);
  return r;
}

std::string DivisorClass::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(coeffs_[i]);
  }
  out += ']';
  return out;
}

DivisorClass parse_class(std::string_view text) {
  std::vector<Integer> coeffs;
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '[')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == ']')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty()) return DivisorClass(std::move(coeffs));
  while (true) {
    auto comma = text.find(',');
    std::string_view field = trim(text.substr(0, comma));
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    Integer value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size())
      throw std::invalid_argument("not an integer coefficient: '" + std::string(field) + "'");
    coeffs.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return DivisorClass(std::move(coeffs));
}

IntersectionForm::IntersectionForm(std::vector<std::vector<Integer>> rows)
    : rank_(rows.size()) {
  entries_.reserve(rank_ * rank_);
  for (const auto& row : rows) {
    if (row.size() != rank_)
      throw std::invalid_argument("intersection matrix is not square");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
  for (std::size_t i = 0; i < rank_; ++i)
    for (std::size_t j = i + 1; j < rank_; ++j)
      if (at(i, j) != at(j, i))
        throw std::invalid_argument("intersection matrix is not symmetric");
}

IntersectionForm IntersectionForm::diagonal(std::span<const Integer> entries) {
  std::vector<std::vector<Integer>> rows(entries.size(),
                                         std::vector<Integer>(entries.size(), 0));
  for (std::size_t i = 0; i < entries.size(); ++i) rows[i][i] = entries[i];
  return IntersectionForm(std::move(rows));
}

std::vector<std::vector<Integer>> IntersectionForm::rows() const {
  std::vector<std::vector<Integer>> out(rank_);
  for (std::size_t i = 0; i < rank_; ++i)
    out[i].assign(entries_.begin() + i * rank_, entries_.begin() + (i + 1) * rank_);
  return out;
}

Integer IntersectionForm::pair(const DivisorClass& d, const DivisorClass& e) const {
  if (d.rank() != rank_) throw RankMismatchError(rank_, d.rank());
  if (e.rank() != rank_) throw RankMismatchError(rank_, e.rank());
  Integer total = 0;
  for (std::size_t i = 0; i < rank_; ++i) {
    if (d[i] == 0) continue;
    Integer row = 0;
    for (std::size_t j = 0; j < rank_; ++j)
      row = checked::add(row, checked::mul(at(i, j), e[j]));
    total = checked::add(total, checked::mul(d[i], row));
  }
  return total;
}

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::del_pezzo: return "del_pezzo";
    case Regime::toric_convex_fan: return "toric_convex_fan";
    case Regime::trivial_canonical: return "trivial_canonical";
    case Regime::general: return "general";
  }
  return "general";
}

std::optional<Regime> parse_regime(std::string_view text) {
  for (Regime r : {Regime::del_pezzo, Regime::toric_convex_fan,
                   Regime::trivial_canonical, Regime::general})
    if (to_string(r) == text) return r;
  return std::nullopt;
}

SurfaceModel::SurfaceModel(Data data) : data_(std::move(data)) {
  const std::size_t r = data_.form.rank();
  if (r == 0) throw std::invalid_argument("surface rank must be positive");
  require_rank(data_.canonical_class);
  for (const auto* list : {&data_.negative_curves, &data_.mori_generators,
                           &data_.effective_generators})
    for (const auto& c : *list) require_rank(c);
  if (data_.basis.size() != r) {
    data_.basis.clear();
    for (std::size_t i = 0; i < r; ++i) data_.basis.push_back("D" + std::to_string(i + 1));
  }
  effective_cone_ = std::make_shared<const Cone>(r, data_.effective_generators);
}

void SurfaceModel::require_rank(const DivisorClass& d) const {
  if (d.rank() != rank()) throw RankMismatchError(rank(), d.rank());
}

Integer intersect(const SurfaceModel& surface, const DivisorClass& d,
                  const DivisorClass& e) {
  return surface.form().pair(d, e);
}

Integer euler_characteristic(const SurfaceModel& surface, const DivisorClass& d) {
  surface.require_rank(d);
  const Integer twice = intersect(surface, d, d - surface.canonical_class());
  if (twice % 2 != 0)
    throw IntegralityError("D.(D-K) = " + std::to_string(twice) + " is odd for D = " +
                           d.to_string() + " on " + surface.name());
  return checked::add(surface.chi_structure_sheaf(), twice / 2);
}

DivisorClass serre_dual(const SurfaceModel& surface, const DivisorClass& d) {
  surface.require_rank(d);
  return surface.canonical_class() - d;
}

}  // namespace isocoh
