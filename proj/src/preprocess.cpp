#include "dualfit/preprocess.hpp"

#include "dualfit/mask_ops.hpp"
#include "dualfit/warp.hpp"

namespace dualfit {

BinaryMask build_inpaint_mask(const ParsingMap& parsing,
                              const std::array<BinaryMask, 3>& bands,
                              const BinaryMask& extra_holes) {
  require(extra_holes.width == parsing.width &&
              extra_holes.height == parsing.height,
          "build_inpaint_mask: dimensions differ");
  for (const auto& band : bands)
    require(band.width == parsing.width && band.height == parsing.height,
            "build_inpaint_mask: band dimensions differ");

  BinaryMask mask = mask_from_labels(
      parsing, {Label::LeftHand, Label::RightHand, Label::Neck});
  for (const auto& band : bands) mask = mask_or(mask, band);
  return mask_or(mask, extra_holes);
}

Image build_preserved_input(const Image& person, const ParsingMap& parsing,
                            const Image& warped, const BinaryMask& warped_alpha,
                            const BinaryMask& inpaint_mask) {
  require(person.same_shape(warped),
          "build_preserved_input: person/warped shapes differ");
  require(parsing.width == person.width && parsing.height == person.height,
          "build_preserved_input: parsing dimensions differ");
  require(warped_alpha.width == person.width &&
              warped_alpha.height == person.height,
          "build_preserved_input: alpha dimensions differ");
  require(inpaint_mask.width == person.width &&
              inpaint_mask.height == person.height,
          "build_preserved_input: mask dimensions differ");

  const BinaryMask upper_body = mask_from_labels(
      parsing, {Label::LeftHand, Label::RightHand, Label::Neck,
                Label::LeftGarment, Label::RightGarment, Label::TorsoGarment});

  Image out = person;
  const int c = person.channels;
  for (std::size_t i = 0; i < upper_body.bits.size(); ++i) {
    if (upper_body.bits[i])
      for (int k = 0; k < c; ++k) out.data[i * c + k] = kFillValue;
  }
  out = overlay(out, warped, warped_alpha);
  for (std::size_t i = 0; i < inpaint_mask.bits.size(); ++i) {
    if (inpaint_mask.bits[i])
      for (int k = 0; k < c; ++k) out.data[i * c + k] = kFillValue;
  }
  return out;
}

PreprocessResult preprocess(const Image& person, const ParsingMap& parsing,
                            const Image& warped, const BinaryMask& warped_alpha,
                            const BinaryMask& hole_mask, const BandSpec& spec) {
  require(hole_mask.width == person.width && hole_mask.height == person.height,
          "preprocess: hole mask dimensions differ");
  spec.validate();

  PreprocessResult result;
  for (std::size_t i = 0; i < kGarmentParts.size(); ++i) {
    const BinaryMask part =
        mask_and(mask_from_labels(parsing, {kGarmentParts[i]}), warped_alpha);
    result.bands[i] = narrow_band(part, spec);
  }
  result.inpaint_mask = build_inpaint_mask(parsing, result.bands, hole_mask);
  result.preserved = build_preserved_input(person, parsing, warped,
                                           warped_alpha, result.inpaint_mask);
  return result;
}

}  // namespace dualfit
