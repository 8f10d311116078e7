// Umbrella header.

#ifndef FFHALTON_FFHALTON_HPP
#define FFHALTON_FFHALTON_HPP

#include "ffhalton/algebra.hpp"
#include "ffhalton/cli.hpp"
#include "ffhalton/function_field.hpp"
#include "ffhalton/io.hpp"
#include "ffhalton/sequence.hpp"
#include "ffhalton/verify.hpp"

#endif  // FFHALTON_FFHALTON_HPP
