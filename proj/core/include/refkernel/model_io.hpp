#pragma once

#include <string>

#include "refkernel/pipeline.hpp"

namespace refkernel {

// Versioned text serialization of a fitted model. Floating-point values are
// written as hexadecimal literals, so save followed by load reproduces every
// field bit for bit and loaded models score identically to in-process ones.
inline constexpr int kModelFormatVersion = 1;

void save_model(const OneClassModel& model, const std::string& path);

// Throws ModelFormatError on a malformed file or an unsupported version.
OneClassModel load_model(const std::string& path);

} // namespace refkernel
