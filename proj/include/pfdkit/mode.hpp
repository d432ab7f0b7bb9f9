#pragma once

#include <string>
#include <string_view>

namespace pfdkit {

/// Whether linear forms live in affine space (constant terms allowed) or in
/// projective space (homogeneous forms only).
enum class Mode { kAffine, kProjective };

inline std::string_view to_string(Mode m) { return m == Mode::kAffine ? "affine" : "projective"; }

}  // namespace pfdkit
