#pragma once

#include <string>
#include <vector>

#include "monotone/verify.hpp"

namespace monotone {

struct GalleryEntry {
  std::string tag;      // stable id, e.g. "face-limsup/sign-p2-pos"
  std::string example;  // operator and instance label
  VerificationReport report;
};

struct GalleryResult {
  std::vector<GalleryEntry> entries;
  int exit_code = 0;  // 0 when nothing failed (premise_failed is expected on some entries)
};

// Bundled deterministic verification suite over the worked operator examples
// (kink subdifferentials, coordinate-max subdifferentials, box/interval/ball
// normal cones, affine maps, duality maps, sums). `only` filters tags by
// substring; `seed` feeds every probe and sampler.
GalleryResult run_gallery(const std::string& only = "", unsigned seed = 0);

std::string gallery_table_text(const GalleryResult& g);
std::string gallery_table_csv(const GalleryResult& g);
std::string gallery_table_json(const GalleryResult& g);

}  // namespace monotone
