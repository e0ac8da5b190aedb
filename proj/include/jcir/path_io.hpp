#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "jcir/simulate.hpp"
#include "jcir/subordinator.hpp"

namespace jcir {

// Path CSV: optional '#' comment lines, then the header `time,value,is_jump`
// and one row per grid point. A file with header `time,value` is read as an
// unannotated path. Doubles are written in shortest round-trip form.
void write_path_csv(std::ostream& out, const Path& path, const std::vector<std::string>& comments = {});
Path read_path_csv(std::istream& in);
void save_path_csv(const std::filesystem::path& file, const Path& path,
                   const std::vector<std::string>& comments = {});
Path load_path_csv(const std::filesystem::path& file);

// Jump train CSV: `# horizon=<T>`, header `time,size`, one row per jump.
void write_jump_train_csv(std::ostream& out, const JumpTrain& train);
JumpTrain read_jump_train_csv(std::istream& in);

}  // namespace jcir
