#pragma once

#include <functional>
#include <string>

namespace nhsense {

/// Diagnostic sink for non-fatal model warnings (working-assumption
/// violations and the like). Defaults to stderr; tests may capture it.
void warn(const std::string& message);
void set_warn_handler(std::function<void(const std::string&)> handler);

}  // namespace nhsense
