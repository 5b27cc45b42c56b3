#pragma once

namespace heckelab {

inline const char* heckelab_version() { return "0.1.0"; }

} // namespace heckelab
