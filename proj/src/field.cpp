#include "virtgen/field.hpp"

#include <sstream>

#include "virtgen/errors.hpp"

namespace virtgen {

std::uint32_t FieldGF2p::conway_polynomial(unsigned degree) {
  static constexpr std::uint32_t kPolys[] = {
      0,      // unused
      0x3,    // x + 1
      0x7,    // x^2 + x + 1
      0xB,    // x^3 + x + 1
      0x13,   // x^4 + x + 1
      0x25,   // x^5 + x^2 + 1
      0x5B,   // x^6 + x^4 + x^3 + x + 1
      0x83,   // x^7 + x + 1
      0x11D,  // x^8 + x^4 + x^3 + x^2 + 1
  };
  if (degree < 1 || degree > 8)
    throw PreconditionError("GF(2^p) supported for 1 <= p <= 8, got p=" + std::to_string(degree));
  return kPolys[degree];
}

std::uint32_t FieldGF2p::slow_mul(std::uint32_t a, std::uint32_t b, unsigned degree,
                                  std::uint32_t poly) {
  std::uint32_t r = 0;
  while (b) {
    if (b & 1u) r ^= a;
    b >>= 1;
    a <<= 1;
    if (a & (1u << degree)) a ^= poly;
  }
  return r;
}

FieldGF2p::FieldGF2p(unsigned degree) : degree_(degree), poly_(conway_polynomial(degree)) {
  const std::uint32_t q = size();
  table_.resize(std::size_t{q} * q);
  for (std::uint32_t a = 0; a < q; ++a)
    for (std::uint32_t b = 0; b < q; ++b)
      table_[(a << degree_) | b] = static_cast<std::uint8_t>(slow_mul(a, b, degree_, poly_));
  inverse_.assign(q, 0);
  for (std::uint32_t a = 1; a < q; ++a)
    for (std::uint32_t b = 1; b < q; ++b)
      if (mul(a, b) == 1) inverse_[a] = static_cast<std::uint8_t>(b);
}

std::uint32_t FieldGF2p::inv(std::uint32_t a) const {
  if (a == 0 || a >= size()) throw PreconditionError("GF(2^p): no inverse of 0");
  return inverse_[a];
}

Word MatrixGF2Rep::multiply(const Word& x, const Word& y) const {
  const auto& f = field_;
  return {f.mul(x[0], y[0]) ^ f.mul(x[1], y[2]), f.mul(x[0], y[1]) ^ f.mul(x[1], y[3]),
          f.mul(x[2], y[0]) ^ f.mul(x[3], y[2]), f.mul(x[2], y[1]) ^ f.mul(x[3], y[3])};
}

std::uint32_t MatrixGF2Rep::determinant(const Word& x) const {
  return field_.mul(x[0], x[3]) ^ field_.mul(x[1], x[2]);
}

Word MatrixGF2Rep::inverse(const Word& x) const {
  const std::uint32_t di = field_.inv(determinant(x));
  // characteristic 2: adj = [[d, b], [c, a]]
  return {field_.mul(di, x[3]), field_.mul(di, x[1]), field_.mul(di, x[2]),
          field_.mul(di, x[0])};
}

std::string MatrixGF2Rep::describe(const Word& x) const {
  std::ostringstream os;
  os << '[' << x[0] << ' ' << x[1] << "; " << x[2] << ' ' << x[3] << ']';
  return os.str();
}

FiniteGroup special_linear_2(unsigned degree, const Caps& limits) {
  auto rep = std::make_shared<MatrixGF2Rep>(degree);
  const std::size_t q = rep->field().size();
  const std::size_t order = q * q * q - q;
  if (order > limits.order) throw CapExceeded("group order", order, limits.order);
  std::vector<Word> gens;
  for (unsigned i = 0; i < degree; ++i) {
    const std::uint32_t alpha = 1u << i;
    gens.push_back({1, alpha, 0, 1});
    gens.push_back({1, 0, alpha, 1});
  }
  return FiniteGroup::generate(rep, gens, "SL2:" + std::to_string(q), limits);
}

}  // namespace virtgen
