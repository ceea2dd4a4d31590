#pragma once

#include <optional>
#include <string>
#include <vector>

#include "slicereg/singular.hpp"
#include "slicereg/slicefn.hpp"

namespace slicereg {

// Named example functions, including the eleven rows of the classification
// table of singular-set dimensions on H \ R.
struct RegistryEntry {
    std::string name;
    std::string description;
    SliceFunction fn;
    int table_row = 0;  // 1..11 for table members, 0 otherwise
    std::optional<DimensionTriple> expected;      // golden (d, w, m)
    std::optional<Quaternion> expected_witness;   // known singular point off D u W
};

const std::vector<RegistryEntry>& registry();
const RegistryEntry* find_function(const std::string& name);

// Stem expression from its JSON description. Supported nodes:
//   {"op":"poly","coeffs":[[w,x,y,z],...]}
//   {"op":"eta"}
//   {"op":"const","c1":[w,x,y,z],"c2":[w,x,y,z]}
//   {"op":"add"|"sub"|"mul","args":[A,B]}
//   {"op":"rscale","arg":A,"q":[w,x,y,z]}
//   {"op":"recip","arg":A}
//   {"op":"derivative","arg":A}
// Throws std::invalid_argument on malformed input.
StemPtr stem_from_json(const std::string& json_text);

}  // namespace slicereg
