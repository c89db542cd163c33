#pragma once

#include <filesystem>
#include <iosfwd>

#include "mgal/model/params.hpp"

namespace mgal::model {

// Text container:
//   mgal-checkpoint 1
//   <name> <rows> <cols>
//   <row values, space separated, shortest round-trip form>
//   ...
// Values round-trip bit-exactly.
void write_checkpoint(std::ostream& out, const NamedMatrices& params);
NamedMatrices read_checkpoint(std::istream& in);

void save_checkpoint(const std::filesystem::path& path, const ModelParams& params);
ModelParams load_checkpoint(const std::filesystem::path& path);

}  // namespace mgal::model
