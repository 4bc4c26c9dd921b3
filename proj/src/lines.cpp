#include "ngdep/lines.hpp"

#include <zlib.h>

#include <cstring>
#include <fstream>

#include "ngdep/errors.hpp"

namespace ngdep {

namespace {

bool has_suffix(const std::string& s, const char* suffix) {
  std::size_t n = std::strlen(suffix);
  return s.size() >= n && s.compare(s.size() - n, n, suffix) == 0;
}

}  // namespace

struct LineReader::Impl {
  std::string path;
  int line_no = 0;
  std::ifstream plain;
  gzFile gz = nullptr;
  std::string gz_buf;
  std::size_t gz_pos = 0;
  bool gz_eof = false;

  explicit Impl(const std::string& p) : path(p) {
    if (has_suffix(p, ".gz")) {
      gz = gzopen(p.c_str(), "rb");
      if (!gz) throw DataError("cannot open corpus file: " + p);
    } else {
      plain.open(p);
      if (!plain) throw DataError("cannot open corpus file: " + p);
    }
  }

  ~Impl() {
    if (gz) gzclose(gz);
  }

  bool refill() {
    if (gz_eof) return false;
    char chunk[1 << 16];
    int got = gzread(gz, chunk, sizeof chunk);
    if (got < 0) {
      int errnum = 0;
      const char* msg = gzerror(gz, &errnum);
      throw DataError(path + ": gzip read error: " +
                      (msg ? msg : "unknown"));
    }
    if (got == 0) {
      gz_eof = true;
      return false;
    }
    gz_buf.erase(0, gz_pos);
    gz_pos = 0;
    gz_buf.append(chunk, static_cast<std::size_t>(got));
    return true;
  }

  bool next_gz(std::string& line) {
    while (true) {
      std::size_t nl = gz_buf.find('\n', gz_pos);
      if (nl != std::string::npos) {
        line.assign(gz_buf, gz_pos, nl - gz_pos);
        gz_pos = nl + 1;
        return true;
      }
      if (!refill()) {
        if (gz_pos < gz_buf.size()) {
          line.assign(gz_buf, gz_pos, gz_buf.size() - gz_pos);
          gz_pos = gz_buf.size();
          return true;
        }
        return false;
      }
    }
  }

  bool next(std::string& line) {
    bool ok = gz ? next_gz(line) : static_cast<bool>(std::getline(plain, line));
    if (!ok) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ++line_no;
    return true;
  }
};

LineReader::LineReader(const std::string& path)
    : impl_(std::make_unique<Impl>(path)) {}
LineReader::~LineReader() = default;
LineReader::LineReader(LineReader&&) noexcept = default;
LineReader& LineReader::operator=(LineReader&&) noexcept = default;

bool LineReader::next(std::string& line) { return impl_->next(line); }
const std::string& LineReader::path() const { return impl_->path; }
int LineReader::line_no() const { return impl_->line_no; }

}  // namespace ngdep
