#include "jcir/path_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "jcir/error.hpp"
#include "jcir/kv.hpp"

namespace jcir {
namespace {

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  for (auto& f : fields) {
    while (!f.empty() && (f.back() == '\r' || f.back() == ' ')) f.pop_back();
    while (!f.empty() && f.front() == ' ') f.erase(f.begin());
  }
  return fields;
}

double parse_number(const std::string& s, int lineno) {
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw Error(ErrorKind::Io, "line " + std::to_string(lineno) + ": bad number '" + s + "'");
  }
  return x;
}

}  // namespace

void write_path_csv(std::ostream& out, const Path& path, const std::vector<std::string>& comments) {
  for (const auto& c : comments) out << "# " << c << '\n';
  out << "time,value,is_jump\n";
  const auto t = path.times();
  const auto y = path.values();
  const auto f = path.is_jump();
  for (std::size_t k = 0; k < t.size(); ++k) {
    out << format_double(t[k]) << ',' << format_double(y[k]) << ',' << (f[k] ? 1 : 0) << '\n';
  }
}

Path read_path_csv(std::istream& in) {
  std::string line;
  int lineno = 0;
  bool have_header = false;
  bool annotated = true;
  std::vector<double> times;
  std::vector<double> values;
  std::vector<std::uint8_t> flags;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r" || line.front() == '#') continue;
    const auto fields = split_commas(line);
    if (!have_header) {
      if (fields.size() == 3 && fields[0] == "time" && fields[1] == "value" && fields[2] == "is_jump") {
        annotated = true;
      } else if (fields.size() == 2 && fields[0] == "time" && fields[1] == "value") {
        annotated = false;
      } else {
        throw Error(ErrorKind::Io, "path CSV header must be time,value[,is_jump]");
      }
      have_header = true;
      continue;
    }
    if (fields.size() != (annotated ? 3u : 2u)) {
      throw Error(ErrorKind::Io, "line " + std::to_string(lineno) + ": wrong column count");
    }
    times.push_back(parse_number(fields[0], lineno));
    values.push_back(parse_number(fields[1], lineno));
    if (annotated) {
      if (fields[2] != "0" && fields[2] != "1") {
        throw Error(ErrorKind::Io, "line " + std::to_string(lineno) + ": is_jump must be 0 or 1");
      }
      flags.push_back(fields[2] == "1" ? 1 : 0);
    }
  }
  if (!have_header || times.empty()) throw Error(ErrorKind::Io, "path CSV has no rows");
  try {
    if (!annotated) return Path::unannotated(std::move(times), std::move(values));
    return Path(std::move(times), std::move(values), std::move(flags));
  } catch (const Error& e) {
    throw Error(ErrorKind::Io, std::string("invalid path in CSV: ") + e.what());
  }
}

void save_path_csv(const std::filesystem::path& file, const Path& path, const std::vector<std::string>& comments) {
  std::ofstream out(file);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + file.string());
  write_path_csv(out, path, comments);
  if (!out) throw Error(ErrorKind::Io, "write failed for " + file.string());
}

Path load_path_csv(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + file.string());
  return read_path_csv(in);
}

void write_jump_train_csv(std::ostream& out, const JumpTrain& train) {
  out << "# horizon=" << format_double(train.horizon()) << '\n';
  out << "time,size\n";
  const auto t = train.times();
  const auto z = train.sizes();
  for (std::size_t i = 0; i < t.size(); ++i) out << format_double(t[i]) << ',' << format_double(z[i]) << '\n';
}

JumpTrain read_jump_train_csv(std::istream& in) {
  std::string line;
  int lineno = 0;
  double horizon = -1.0;
  bool have_header = false;
  std::vector<double> times;
  std::vector<double> sizes;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto pos = line.find("horizon=");
      if (pos != std::string::npos) {
        auto value = line.substr(pos + 8);
        while (!value.empty() && (value.back() == '\r' || value.back() == ' ')) value.pop_back();
        horizon = parse_number(value, lineno);
      }
      continue;
    }
    const auto fields = split_commas(line);
    if (!have_header) {
      if (fields.size() != 2 || fields[0] != "time" || fields[1] != "size") {
        throw Error(ErrorKind::Io, "jump CSV header must be time,size");
      }
      have_header = true;
      continue;
    }
    if (fields.size() != 2) throw Error(ErrorKind::Io, "line " + std::to_string(lineno) + ": wrong column count");
    times.push_back(parse_number(fields[0], lineno));
    sizes.push_back(parse_number(fields[1], lineno));
  }
  if (horizon < 0.0) throw Error(ErrorKind::Io, "jump CSV lacks '# horizon=' line");
  try {
    return JumpTrain(horizon, std::move(times), std::move(sizes));
  } catch (const Error& e) {
    throw Error(ErrorKind::Io, std::string("invalid jump train in CSV: ") + e.what());
  }
}

}  // namespace jcir
