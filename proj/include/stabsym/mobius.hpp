#pragma once

#include <complex>

namespace stabsym {

/// An open or closed disk, disk exterior, or half-plane in C.
///
/// Half-planes are stored as {z : Re(conj(normal) * z) > offset}; the upper
/// half-plane is normal = i, offset = 0.
struct CircularRegion {
  enum class Kind { Disk, HalfPlane };

  Kind kind = Kind::HalfPlane;
  std::complex<double> center{0.0, 0.0};
  double radius = 1.0;
  std::complex<double> normal{0.0, 1.0};
  double offset = 0.0;
  bool open = true;
  /// Disk: inside (true) or outside (false) the circle. Half-plane: the side
  /// the normal points into (true) or the opposite side.
  bool interior = true;

  static CircularRegion disk(std::complex<double> center, double radius, bool interior = true, bool open = true);
  static CircularRegion half_plane(std::complex<double> normal, double offset, bool interior = true, bool open = true);
  static CircularRegion upper_half_plane() { return half_plane({0.0, 1.0}, 0.0); }

  /// The interior of the complement (always open).
  CircularRegion complement() const;
  bool contains(std::complex<double> z) const;
};

struct MobiusMap {
  std::complex<double> a{1.0, 0.0};
  std::complex<double> b{0.0, 0.0};
  std::complex<double> c{0.0, 0.0};
  std::complex<double> d{1.0, 0.0};

  std::complex<double> determinant() const { return a * d - b * c; }
  MobiusMap inverse() const { return {d, -b, -c, a}; }
};

/// (az + b) / (cz + d); throws PreconditionError at the pole.
std::complex<double> mobius_apply(const MobiusMap& phi, std::complex<double> z);

/// A Möbius map sending the open region R onto the open upper half-plane.
/// Its boundary goes to the real line and the complement's interior to the
/// lower half-plane.
MobiusMap region_to_halfplane(const CircularRegion& region);

}  // namespace stabsym
