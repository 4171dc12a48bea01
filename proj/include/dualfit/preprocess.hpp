#pragma once

#include <array>

#include "dualfit/morphology.hpp"
#include "dualfit/types.hpp"

namespace dualfit {

/// Blanking value for removed pixels (mid-gray on the unit interval).
inline constexpr float kFillValue = 0.5f;

struct PreprocessResult {
  Image preserved;            // person with upper body removed, garment laid on
  BinaryMask inpaint_mask;    // union of hands, neck, bands, and holes
  std::array<BinaryMask, 3> bands;  // left, right, torso narrow bands
};

/// Inpainting mask: hands and neck from the parsing map, the three
/// narrow bands, and any extra holes, all unioned.
BinaryMask build_inpaint_mask(const ParsingMap& parsing,
                              const std::array<BinaryMask, 3>& bands,
                              const BinaryMask& extra_holes);

/// Person image with the upper body (hands, neck, garment regions;
/// head/hair kept) blanked, the warped garment overlaid where its alpha
/// is set, and finally every inpaint-mask pixel blanked again.
Image build_preserved_input(const Image& person, const ParsingMap& parsing,
                            const Image& warped, const BinaryMask& warped_alpha,
                            const BinaryMask& inpaint_mask);

/// Full preprocessing stage: per-part masks are the garment parsing
/// labels restricted to the warped footprint, bands come from the
/// erosion spec, and the hole mask from assembly joins the inpaint mask.
PreprocessResult preprocess(const Image& person, const ParsingMap& parsing,
                            const Image& warped, const BinaryMask& warped_alpha,
                            const BinaryMask& hole_mask, const BandSpec& spec);

}  // namespace dualfit
