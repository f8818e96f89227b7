#pragma once

#include <filesystem>

#include "paratuck2/model.hpp"
#include "paratuck2/tensor.hpp"

namespace paratuck2 {

/// Tensor file schema: {"dims": [N1,N2,N3], "data_re": [...], "data_im": [...]}
/// with flat arrays in the slice-major / column-major-within-slice layout and
/// full double precision. Unreadable paths raise Io; malformed or
/// inconsistent contents raise Parse.
Tensor3 load_tensor(const std::filesystem::path& path);
void save_tensor(const Tensor3& T, const std::filesystem::path& path);

/// Factor file schema: one {"rows", "cols", "re", "im"} object per factor
/// key A, B, F, G, H, column-major arrays.
ParaTuck2Factors load_factors(const std::filesystem::path& path);
void save_factors(const ParaTuck2Factors& f, const std::filesystem::path& path);

}  // namespace paratuck2
