#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "virtgen/group.hpp"

namespace virtgen {

/// GF(2^p) for 1 <= p <= 8, elements as bit vectors of polynomial coefficients.
///
/// The defining polynomials are the Conway polynomials:
///   p=1 x+1, p=2 x^2+x+1, p=3 x^3+x+1, p=4 x^4+x+1, p=5 x^5+x^2+1,
///   p=6 x^6+x^4+x^3+x+1, p=7 x^7+x+1, p=8 x^8+x^4+x^3+x^2+1.
class FieldGF2p {
 public:
  explicit FieldGF2p(unsigned degree);

  unsigned degree() const noexcept { return degree_; }
  std::uint32_t size() const noexcept { return 1u << degree_; }
  std::uint32_t polynomial() const noexcept { return poly_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept { return a ^ b; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
    return table_[(a << degree_) | b];
  }
  /// Multiplicative inverse; throws PreconditionError for 0.
  std::uint32_t inv(std::uint32_t a) const;

  static std::uint32_t conway_polynomial(unsigned degree);

 private:
  static std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b, unsigned degree,
                                std::uint32_t poly);
  unsigned degree_;
  std::uint32_t poly_;
  std::vector<std::uint8_t> table_;
  std::vector<std::uint8_t> inverse_;
};

/// 2x2 matrices over GF(2^p); words are {a, b, c, d} for [[a, b], [c, d]].
class MatrixGF2Rep final : public Representation {
 public:
  explicit MatrixGF2Rep(unsigned degree) : field_(degree) {}
  const FieldGF2p& field() const noexcept { return field_; }
  Word identity() const override { return {1, 0, 0, 1}; }
  Word multiply(const Word& x, const Word& y) const override;
  Word inverse(const Word& x) const override;
  std::string describe(const Word& x) const override;
  std::uint32_t determinant(const Word& x) const;

 private:
  FieldGF2p field_;
};

/// SL(2, 2^p), generated by the elementary transvections over a basis of GF(2^p).
FiniteGroup special_linear_2(unsigned degree, const Caps& limits = caps());

}  // namespace virtgen
