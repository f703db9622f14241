#pragma once

// Seeded random test objects. All draws go through CounterRng, so a given
// seed yields the same objects on every platform.

#include "spinlab/fock.hpp"
#include "spinlab/rng.hpp"

namespace spinlab {

/// Uniform on the sphere (normalized Gaussian triple).
Direction random_direction(CounterRng& rng);

/// Uniformly oriented right-handed frame.
OrthogonalTriplet random_triplet(CounterRng& rng);

/// Symmetric Dirichlet(1) over k = 0..n via normalized exponentials.
DiagonalMixture random_mixture(int n, CounterRng& rng);

/// Haar-like pure state: normalized complex Gaussian vector.
PureState random_pure_state(int n, CounterRng& rng);

/// Full-rank mixed state G·G† / Tr(G·G†) with G complex Gaussian.
DensityOperator random_density(int n, CounterRng& rng);

} // namespace spinlab
