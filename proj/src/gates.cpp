#include "locc/gates.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "locc/errors.hpp"

namespace locc::gates {

namespace {

Amplitude root_of_unity(std::size_t numerator, std::size_t dim, double sign) {
  const double angle =
      sign * 2.0 * std::numbers::pi * static_cast<double>(numerator % dim) / static_cast<double>(dim);
  return {std::cos(angle), std::sin(angle)};
}

void require_dim(std::size_t dim) {
  if (dim < 2) throw DimensionError("gate dimension must be at least 2");
}

}  // namespace

Unitary xor_qubit() { return xor_qudit(2); }

Unitary xor_qudit(std::size_t dim) {
  require_dim(dim);
  std::vector<std::size_t> perm(dim * dim);
  for (std::size_t x = 0; x < dim; ++x)
    for (std::size_t y = 0; y < dim; ++y) perm[x * dim + y] = x * dim + (y + x) % dim;
  return permutation(perm);
}

Unitary hadamard() {
  const double s = 1.0 / std::numbers::sqrt2;
  return Unitary::from_entries(2, {s, s, s, -s});
}

Unitary pauli_x() { return Unitary::from_entries(2, {0.0, 1.0, 1.0, 0.0}); }

Unitary pauli_y() {
  const Amplitude i{0.0, 1.0};
  return Unitary::from_entries(2, {0.0, -i, i, 0.0});
}

Unitary pauli_z() { return Unitary::from_entries(2, {1.0, 0.0, 0.0, -1.0}); }

Unitary phase(double theta) { return diagonal({1.0, std::polar(1.0, theta)}); }

Unitary fourier(std::size_t dim) {
  require_dim(dim);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  std::vector<Amplitude> e(dim * dim);
  for (std::size_t k = 0; k < dim; ++k)
    for (std::size_t x = 0; x < dim; ++x) e[k * dim + x] = scale * root_of_unity(k * x, dim, 1.0);
  return Unitary::unchecked(dim, std::move(e));
}

Unitary phase_correction(std::size_t dim, std::size_t k) {
  require_dim(dim);
  if (k >= dim) throw DomainError("phase correction index out of range");
  std::vector<Amplitude> phases(dim);
  for (std::size_t l = 0; l < dim; ++l) phases[l] = root_of_unity(k * l, dim, -1.0);
  return diagonal(phases);
}

Unitary cyclic_shift(std::size_t dim, const std::vector<std::size_t>& indices, std::size_t shift) {
  std::vector<std::size_t> perm(dim);
  for (std::size_t i = 0; i < dim; ++i) perm[i] = i;
  const std::size_t r = indices.size();
  for (std::size_t v = 0; v < r; ++v) {
    if (indices[v] >= dim) throw DimensionError("cyclic shift index out of range");
    perm[indices[v]] = indices[(v + shift) % r];
  }
  return permutation(perm);
}

Unitary permutation(const std::vector<std::size_t>& perm) {
  const std::size_t n = perm.size();
  if (n == 0) throw DimensionError("empty permutation");
  std::vector<bool> hit(n, false);
  std::vector<Amplitude> e(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    if (perm[x] >= n || hit[perm[x]]) throw DomainError("not a permutation");
    hit[perm[x]] = true;
    e[perm[x] * n + x] = 1.0;
  }
  return Unitary::unchecked(n, std::move(e));
}

Unitary diagonal(const std::vector<Amplitude>& phases) {
  const std::size_t n = phases.size();
  if (n == 0) throw DimensionError("empty diagonal");
  std::vector<Amplitude> e(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(std::abs(phases[i]) - 1.0) > kTolerance) throw DomainError("diagonal entry is not a phase");
    e[i * n + i] = phases[i];
  }
  return Unitary::unchecked(n, std::move(e));
}

Unitary complete_to_unitary(std::size_t dim, const std::map<std::size_t, std::vector<Amplitude>>& prescribed) {
  if (dim == 0) throw DimensionError("empty unitary");
  std::vector<std::vector<Amplitude>> columns(dim);
  std::vector<const std::vector<Amplitude>*> basis;
  auto dot = [](const std::vector<Amplitude>& a, const std::vector<Amplitude>& b) {
    Amplitude s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
  };
  for (const auto& [col, image] : prescribed) {
    if (col >= dim) throw DimensionError("prescribed column out of range");
    if (image.size() != dim) throw DimensionError("prescribed column has wrong length");
    columns[col] = image;
  }
  for (const auto& [col, image] : prescribed) {
    if (std::abs(dot(image, image) - 1.0) > kTolerance) throw DomainError("prescribed column is not normalized");
    for (const auto* other : basis)
      if (std::abs(dot(*other, image)) > kTolerance) throw DomainError("prescribed columns are not orthogonal");
    basis.push_back(&columns[col]);
  }

  std::size_t next_free = 0;
  auto advance = [&] {
    while (next_free < dim && prescribed.count(next_free)) ++next_free;
  };
  advance();
  for (std::size_t candidate = 0; candidate < dim && next_free < dim; ++candidate) {
    std::vector<Amplitude> v(dim, 0.0);
    v[candidate] = 1.0;
    // Two passes of modified Gram-Schmidt keep the completion orthogonal to 1e-15.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto* b : basis) {
        const Amplitude c = dot(*b, v);
        for (std::size_t i = 0; i < dim; ++i) v[i] -= c * (*b)[i];
      }
    const double n = std::sqrt(std::real(dot(v, v)));
    if (n < kTolerance) continue;
    for (auto& x : v) x /= n;
    columns[next_free] = std::move(v);
    basis.push_back(&columns[next_free]);
    ++next_free;
    advance();
  }
  if (next_free < dim) throw DomainError("could not complete prescription to a unitary");

  std::vector<Amplitude> e(dim * dim);
  for (std::size_t c = 0; c < dim; ++c)
    for (std::size_t r = 0; r < dim; ++r) e[r * dim + c] = columns[c][r];
  return Unitary::from_entries(dim, std::move(e));
}

}  // namespace locc::gates
