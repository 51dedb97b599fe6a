#pragma once

#include "pathgen/input.hpp"
#include "pathgen/rng.hpp"
#include "pathgen/schema.hpp"

namespace pathgen {

// Draws one input for the given shape. Elements are i.i.d. uniform on
// [0, domain); sorted arrays are sorted after sampling; distinct arrays
// redraw duplicate positions. Consumes the stream deterministically:
// params in schema order, elements in storage order.
// Throws InfeasibleConstraint when a distinct array is longer than the
// domain.
InputVector sample_input(const InputSchema& schema, const Shape& shape, std::int64_t domain,
                         SplitMix64& rng);

}  // namespace pathgen
