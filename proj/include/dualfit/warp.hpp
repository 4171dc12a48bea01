#pragma once

#include <array>

#include "dualfit/flow.hpp"
#include "dualfit/types.hpp"

namespace dualfit {

/// One garment part after backward warping. `coverage` marks pixels whose
/// bilinear footprint stayed in-bounds and landed on the part's alpha.
struct WarpedPart {
  Image image;
  BinaryMask coverage;
  Label part_id = Label::TorsoGarment;
};

struct WearingStyle {
  enum class Style { TuckedIn, TuckedOut };
  Style style = Style::TuckedOut;
  double ratio_flat = 0.0;
  double ratio_warped = 0.0;
  double disparity = 0.0;
};

/// Bilinear upsampling of a flow field (align-corners-false sample
/// centers). Displacements are rescaled by the dimension ratios so they
/// stay in target-pixel units; constant fields scale exactly.
FlowField upsample_flow(const FlowField& flow, int target_w, int target_h);

/// Backward warp: out(x,y) samples `source` at (x+u, y+v), scaled into
/// source coordinates when source and flow dimensions differ. Zero flow
/// reproduces the input exactly.
WarpedPart apply_flow(const Image& source, const BinaryMask& source_alpha,
                      const FlowField& flow, Label part_id);

/// Warped garment assembled from the three parts under the global
/// parsing. `holes` marks pixels a part was assigned to but failed to
/// cover; those are handed to the inpainting stage.
struct AssembledGarment {
  Image image;
  BinaryMask alpha;
  BinaryMask holes;
};

inline constexpr std::array<Label, 3> kGarmentParts = {
    Label::LeftGarment, Label::RightGarment, Label::TorsoGarment};

/// Per-pixel part selection: parts and global parsing masks are indexed
/// left, right, torso. The global masks must be pairwise disjoint.
AssembledGarment assemble_parts(const std::array<WarpedPart, 3>& parts,
                                const std::array<BinaryMask, 3>& global_parsing);

/// Wearing-style decision from the height/width ratios of the two torso
/// bounding boxes: a warped ratio below flat*(1-threshold) means the
/// garment is tucked in.
WearingStyle dgt_classify(const BinaryMask& flat_torso,
                          const BinaryMask& warped_torso, double threshold);

/// The region whose gradients a trainer would truncate for this style:
/// the preserved region when tucked in, nothing when tucked out.
BinaryMask truncation_mask(const WearingStyle& style,
                           const BinaryMask& preserved_region);

}  // namespace dualfit
