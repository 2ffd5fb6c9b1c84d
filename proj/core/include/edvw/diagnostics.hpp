#pragma once

#include <functional>
#include <string>

namespace edvw {

// Non-fatal conditions (pair budget exceeded, floored kappa, dropped
// components...) are reported through a process-wide handler. The default
// writes "edvw: warning: <msg>" to stderr.
using WarningHandler = std::function<void(const std::string&)>;

WarningHandler set_warning_handler(WarningHandler handler);
void warn(const std::string& message);

}  // namespace edvw
