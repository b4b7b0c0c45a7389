#pragma once

#include <string>

#include "bimsem/attributes.hpp"
#include "bimsem/geometry.hpp"

namespace bimsem {

// One building object moving through the pipeline.
struct ObjectRecord {
    std::string id;
    Mesh mesh;
    std::string cls;       // wall / floor / window / door
    double confidence = 1.0;
    AttributeMap attributes;
};

} // namespace bimsem
