#pragma once

#include <iosfwd>
#include <string>

#include "spde2d/simulate.hpp"

namespace spde2d {

// Binary field container.
//
//   bytes 0..7   magic "SPDE2D01"
//   3 x int64    N, M1, M2                      (little endian)
//   uint64       length of the config text      (little endian)
//   ...          config text (UTF-8, key=value lines incl. generator metadata)
//   ...          (N+1)(M1+1)(M2+1) float64 values, little endian,
//                [t][y][z] row-major
void write_field(const FieldData& field, const std::string& path);
FieldData read_field(const std::string& path);

// CSV export, one row per (i,j,k): header "i,j,k,value".
void write_field_csv(const FieldData& field, std::ostream& out);
void write_field_csv(const FieldData& field, const std::string& path);

// Serializes generator metadata into the container's config text and parses
// it back.  Unknown lines are preserved in meta.config_text verbatim.
std::string field_meta_to_text(const FieldMeta& meta);
FieldMeta field_meta_from_text(const std::string& text);

}  // namespace spde2d
