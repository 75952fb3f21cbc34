#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "betaot/costs.hpp"

namespace betaot {

/// One block of a synthetic sample.
///
///   gaussian(n=500;mean=0,0;scale=1)     isotropic normal, dim from mean or dim=
///   uniform(n=10;lo=-50;hi=50;dim=2)      box, lo/hi scalar or per-axis
///   point(n=5;at=70)                      repeated fixed point
///   sphere(n=50;radius=100;dim=10)        uniform directions at a fixed radius
///                                         around center= (default origin)
///
/// A bare `outlier` key marks the block's points as planted outliers.
struct SampleComponent {
  enum class Kind { Gaussian, Uniform, Point, Sphere };
  Kind kind = Kind::Gaussian;
  std::size_t count = 0;
  std::vector<double> center;  ///< mean / point / sphere center
  double scale = 1.0;          ///< gaussian sd or sphere radius
  std::vector<double> lo, hi;  ///< uniform box
  bool outlier = false;
};

/// Components joined with '+', e.g. "gaussian(n=950;dim=10)+sphere(n=50;radius=100;dim=10;outlier)".
struct SampleSpec {
  std::vector<SampleComponent> components;
  std::size_t dim = 0;
};

/// Throws InputError on unknown kinds or keys, missing counts, or mixed dimensions.
SampleSpec parse_sample_spec(std::string_view text);

struct Sample {
  PointCloud points;
  std::vector<std::size_t> outliers;  ///< indices drawn from `outlier` components
};

/// Components are drawn in order from one mt19937_64 stream seeded with `seed`.
Sample draw_sample(const SampleSpec& spec, std::uint64_t seed);

}  // namespace betaot
