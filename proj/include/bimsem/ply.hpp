#pragma once

#include <string>

#include "bimsem/geometry.hpp"

namespace bimsem {

enum class PlyFormat { ascii, binary_little_endian };

// Load a PLY mesh. Supported subset: ASCII or binary-little-endian,
// vertex properties x/y/z as float32 or float64 (other vertex properties
// are skipped), face property list "vertex_indices"/"vertex_index".
// Polygon faces with more than three vertices are fan-triangulated from
// their first vertex.
//
// Throws FormatError on malformed headers, DataError on out-of-range face
// indices or empty element lists, IoError when the file cannot be read.
Mesh load_ply(const std::string& path);

// Write a mesh. ASCII coordinates carry 9 significant digits.
// Refuses empty meshes.
void write_ply(const Mesh& mesh, const std::string& path,
               PlyFormat format = PlyFormat::ascii);

} // namespace bimsem
