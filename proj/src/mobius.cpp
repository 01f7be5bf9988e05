#include "stabsym/mobius.hpp"

#include <cmath>

#include "stabsym/error.hpp"

namespace stabsym {

using cd = std::complex<double>;

CircularRegion CircularRegion::disk(cd center, double radius, bool interior, bool open) {
  if (!(radius > 0.0)) throw PreconditionError("disk radius must be positive");
  CircularRegion r;
  r.kind = Kind::Disk;
  r.center = center;
  r.radius = radius;
  r.interior = interior;
  r.open = open;
  return r;
}

CircularRegion CircularRegion::half_plane(cd normal, double offset, bool interior, bool open) {
  if (normal == cd(0.0)) throw PreconditionError("half-plane normal must be nonzero");
  CircularRegion r;
  r.kind = Kind::HalfPlane;
  r.normal = normal;
  r.offset = offset;
  r.interior = interior;
  r.open = open;
  return r;
}

CircularRegion CircularRegion::complement() const {
  CircularRegion r = *this;
  r.interior = !interior;
  r.open = true;
  return r;
}

bool CircularRegion::contains(cd z) const {
  double signed_distance = 0.0;  // positive inside
  if (kind == Kind::Disk) {
    signed_distance = radius - std::abs(z - center);
  } else {
    signed_distance = (std::conj(normal) * z).real() - offset;
  }
  if (!interior) signed_distance = -signed_distance;
  return open ? signed_distance > 0.0 : signed_distance >= 0.0;
}

cd mobius_apply(const MobiusMap& phi, cd z) {
  const cd den = phi.c * z + phi.d;
  if (den == cd(0.0)) throw PreconditionError("mobius_apply: point is the pole of the map");
  return (phi.a * z + phi.b) / den;
}

MobiusMap region_to_halfplane(const CircularRegion& region) {
  if (!region.open) throw PreconditionError("region_to_halfplane: region must be open");
  const cd i(0.0, 1.0);
  MobiusMap phi;
  if (region.kind == CircularRegion::Kind::Disk) {
    const cd c0 = region.center;
    const double r = region.radius;
    if (region.interior) {
      // Cayley map i(1+w)/(1-w) after w = (z - c0)/r.
      phi = {i, i * (r - c0), cd(-1.0), r + c0};
    } else {
      // w = r/(z - c0) takes the exterior into the unit disk.
      phi = {i, i * (r - c0), cd(1.0), -c0 - r};
    }
  } else {
    cd nu = region.normal;
    double off = region.offset;
    if (!region.interior) {
      nu = -nu;
      off = -off;
    }
    phi = {i * std::conj(nu), cd(0.0, -off), cd(0.0), cd(1.0)};
  }
  if (std::abs(phi.determinant()) == 0.0) throw PreconditionError("degenerate Möbius map");
  return phi;
}

}  // namespace stabsym
