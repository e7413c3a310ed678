#pragma once

#include "sphere/catalog.hpp"

// generated at build time from data/catalog.json
#include "sphere_catalog_data.hpp"

namespace sphere {

/// The catalog shipped with the repository, parsed once.
inline const Catalog& default_catalog() {
  static const Catalog cat = Catalog::from_json_text(kCatalogJson);
  return cat;
}

}  // namespace sphere
