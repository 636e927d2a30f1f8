#ifndef MG_VENDOR_JSON_FWD_HPP
#define MG_VENDOR_JSON_FWD_HPP

// Single include point for nlohmann::json so the vendored header path stays
// in one place.
#include "json.hpp"

#endif
