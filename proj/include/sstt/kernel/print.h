#pragma once

#include <string>

#include "sstt/kernel/term.h"

namespace sstt::kernel {

// ASCII concrete syntax accepted by the surface parser.
std::string to_string(const Term& t);

}  // namespace sstt::kernel
