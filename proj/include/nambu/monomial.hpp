#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nambu {

/// Largest ambient dimension supported anywhere in the library.
inline constexpr int kMaxDim = 4;

/// Sorted multiset of coordinate indices 1..d, stored as per-coordinate counts.
/// (1,1,3) means d^2/dx1^2 d/dx3.
class MultiIndex {
 public:
  MultiIndex() = default;
  /// From an unsorted list of 1-based coordinate indices.
  static MultiIndex from_indices(const std::vector<int>& indices);

  [[nodiscard]] int count(int coordinate) const { return counts_[coordinate - 1]; }
  [[nodiscard]] int order() const {
    return counts_[0] + counts_[1] + counts_[2] + counts_[3];
  }
  [[nodiscard]] MultiIndex with(int coordinate) const {
    MultiIndex m = *this;
    ++m.counts_[coordinate - 1];
    return m;
  }
  /// Nondecreasing list of coordinate indices.
  [[nodiscard]] std::vector<int> indices() const;
  [[nodiscard]] const std::array<std::uint8_t, kMaxDim>& counts() const { return counts_; }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  /// Lexicographic on the sorted index tuple.
  friend bool operator<(const MultiIndex& a, const MultiIndex& b) { return a.indices() < b.indices(); }

 private:
  std::array<std::uint8_t, kMaxDim> counts_{};
};

/// The functions a jet variable can refer to.
enum class Field : std::uint8_t { Rho = 0, A1 = 1, A2 = 2 };

std::string field_name(Field f);

/// A formal symbol for a partial derivative of rho, a1 or a2, packed into 16 bits:
/// 2 bits of field, then 3 bits of derivative count per coordinate.
class JetVar {
 public:
  static constexpr int kMaxCount = 7;

  JetVar() = default;
  JetVar(Field field, const MultiIndex& derivative);
  static JetVar from_code(std::uint16_t code) {
    JetVar v;
    v.code_ = code;
    return v;
  }

  [[nodiscard]] Field field() const { return static_cast<Field>(code_ >> 12); }
  [[nodiscard]] int count(int coordinate) const { return (code_ >> (3 * (kMaxDim - coordinate))) & 7; }
  [[nodiscard]] MultiIndex derivative() const;
  [[nodiscard]] int order() const;
  /// d/dx_i of this jet variable.
  [[nodiscard]] JetVar differentiated(int coordinate) const;
  [[nodiscard]] std::uint16_t code() const { return code_; }
  [[nodiscard]] std::string str() const;

  friend bool operator==(JetVar, JetVar) = default;
  friend auto operator<=>(JetVar a, JetVar b) { return a.code_ <=> b.code_; }

 private:
  std::uint16_t code_ = 0;
};

/// Orders jet variables by field, then by the sorted multi-index tuple.
bool canonical_less(JetVar a, JetVar b);

/// Commutative product of jet variables: a sorted multiset with inline storage.
class JetMonomial {
 public:
  static constexpr int kCapacity = 16;

  JetMonomial() = default;
  explicit JetMonomial(JetVar v) : size_(1) { vars_[0] = v.code(); }

  [[nodiscard]] int degree() const { return size_; }
  [[nodiscard]] JetVar operator[](int i) const { return JetVar::from_code(vars_[i]); }
  [[nodiscard]] bool empty() const { return size_ == 0; }

  /// Inserts one more factor, keeping the list sorted.
  void insert(JetVar v);
  /// Total derivative pieces: replaces factor at position i by its d/dx_c.
  [[nodiscard]] JetMonomial with_differentiated(int position, int coordinate) const;

  friend JetMonomial operator*(const JetMonomial& a, const JetMonomial& b);
  friend bool operator==(const JetMonomial& a, const JetMonomial& b) {
    return a.size_ == b.size_ && std::equal(a.vars_.begin(), a.vars_.begin() + a.size_, b.vars_.begin());
  }
  /// Fast total order on the packed factor codes (deterministic, not the text order).
  friend bool operator<(const JetMonomial& a, const JetMonomial& b) {
    return std::lexicographical_compare(a.vars_.begin(), a.vars_.begin() + a.size_, b.vars_.begin(),
                                        b.vars_.begin() + b.size_);
  }
  /// Serialization order: factors sorted by canonical_less, then compared lexicographically.
  friend bool canonical_less(const JetMonomial& a, const JetMonomial& b);

  [[nodiscard]] std::size_t hash() const;
  [[nodiscard]] std::string str() const;

 private:
  std::array<std::uint16_t, kCapacity> vars_{};
  std::uint8_t size_ = 0;
};

/// Monomial x1^e1 ... x4^e4 with 16-bit exponents packed into one word.
class CoordMonomial {
 public:
  CoordMonomial() = default;
  static CoordMonomial variable(int coordinate) { return CoordMonomial{}.times_variable(coordinate); }

  [[nodiscard]] int exponent(int coordinate) const {
    return static_cast<int>((packed_ >> (16 * (kMaxDim - coordinate))) & 0xFFFF);
  }
  [[nodiscard]] int degree() const;
  [[nodiscard]] CoordMonomial times_variable(int coordinate) const {
    CoordMonomial m;
    m.packed_ = packed_ + (std::uint64_t{1} << (16 * (kMaxDim - coordinate)));
    return m;
  }
  [[nodiscard]] CoordMonomial divided_by_variable(int coordinate) const {
    CoordMonomial m;
    m.packed_ = packed_ - (std::uint64_t{1} << (16 * (kMaxDim - coordinate)));
    return m;
  }
  [[nodiscard]] std::uint64_t packed() const { return packed_; }
  [[nodiscard]] std::size_t hash() const { return std::hash<std::uint64_t>{}(packed_ * 0x9E3779B97F4A7C15ULL); }
  [[nodiscard]] std::string str() const;

  friend CoordMonomial operator*(CoordMonomial a, CoordMonomial b) {
    CoordMonomial m;
    m.packed_ = a.packed_ + b.packed_;
    return m;
  }
  friend bool operator==(CoordMonomial, CoordMonomial) = default;
  /// Graded: lower total degree first, then lexicographic in the exponents.
  friend bool operator<(CoordMonomial a, CoordMonomial b) {
    const int da = a.degree();
    const int db = b.degree();
    return da != db ? da < db : a.packed_ > b.packed_;
  }

 private:
  std::uint64_t packed_ = 0;
};

}  // namespace nambu

template <>
struct std::hash<nambu::JetMonomial> {
  std::size_t operator()(const nambu::JetMonomial& m) const noexcept { return m.hash(); }
};

template <>
struct std::hash<nambu::CoordMonomial> {
  std::size_t operator()(const nambu::CoordMonomial& m) const noexcept { return m.hash(); }
};
