#pragma once

#include "swc/grid/metric.hpp"
#include "swc/tensor/point.hpp"

namespace swc {

/// Slot values of a Riemann-type field at one point.
tensor::PointRiem riem_at(const Riem4Field& t, std::size_t p);
void store_riem(Riem4Field& t, std::size_t p, const tensor::PointRiem& v);

/// Pointwise Kulkarni-Nomizu product.
Riem4Field kulkarni_nomizu(const Sym2Field& a, const Sym2Field& b);

/// Pointwise |T| with indices raised by the given inverse metric field.
ScalarField riemann_norm(const Riem4Field& t, const Sym2Field& inverse);
ScalarField riemann_norm(const Riem4Field& t, const MetricField& g);

/// Largest first-Bianchi residual over all points. Pair antisymmetry and pair
/// exchange hold by construction of the deduplicated storage.
double validate_riemann_symmetries(const Riem4Field& t);

}  // namespace swc
