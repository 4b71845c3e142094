#pragma once

// Inequalities transcribed verbatim from the literature, typos included.
//
//   chsh                two-party body with signs (+,+,+,-), bound 2
//   n3-complete         3 parties: extremes plus the orbit of (+-0)
//   n3-pairwise         n3-complete without extremes: two-party correlations only
//   n5-a, n5-b          5 parties: extremes plus three one-ZERO orbits
//   n5-b-no-extremes    n5-b without extremes
//   n7                  7 parties: extremes plus eight one-ZERO orbits (mass 114)
//   n9-a                9 parties: 28 one-ZERO orbits plus explicit rows
//   n9-b                9 parties: 7 three-ZERO orbits plus explicit rows

#include <string>
#include <vector>

#include "bellforge/io.hpp"
#include "bellforge/term_algebra.hpp"

namespace bellforge {

struct CatalogEntry {
  std::string name;
  std::string description;
  int n = 0;
  Rational bound{1};
  // Orbit generators as printed; each expands to its full cyclic orbit.
  std::vector<std::string> generators;
  // Every row as printed (orbits expanded), in print order, duplicates kept.
  std::vector<BellTerm> rows;

  InequalityDocument document() const;
  // Rows with repeated patterns collapsed to their first occurrence.
  BellInequality inequality() const;
};

const std::vector<CatalogEntry>& catalog();
// Throws InvalidConfig for an unknown name.
const CatalogEntry& catalog_entry(const std::string& name);

}  // namespace bellforge
