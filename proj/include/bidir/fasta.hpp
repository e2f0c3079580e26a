#pragma once

// Streaming FASTA reader and a wrapping writer. Sequences are upper-cased;
// multi-line records are joined; blank lines and '\r' are ignored.

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "bidir/error.hpp"

namespace bidir {

struct FastaRecord {
  std::string name;
  std::string sequence;
};

class FastaReader {
 public:
  explicit FastaReader(std::istream& in) : in_(in) {}

  // Reads the next record into `rec`; false at end of input. Throws
  // InputError on sequence data before the first header.
  bool next(FastaRecord& rec) {
    if (!have_header_) {
      while (std::getline(in_, line_)) {
        ++line_no_;
        strip_cr(line_);
        if (is_blank(line_)) continue;
        if (line_[0] != '>') {
          throw InputError("FASTA line " + std::to_string(line_no_) + ": sequence data before first '>' header");
        }
        have_header_ = true;
        break;
      }
      if (!have_header_) return false;
    }
    if (line_.empty() || line_[0] != '>') return false;
    rec.name = trim(std::string_view(line_).substr(1));
    rec.sequence.clear();
    line_.clear();
    while (std::getline(in_, line_)) {
      ++line_no_;
      strip_cr(line_);
      if (!line_.empty() && line_[0] == '>') return true;
      for (char c : line_) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
          rec.sequence.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
        }
      }
    }
    line_.clear();
    return true;
  }

  std::size_t line_number() const noexcept { return line_no_; }

 private:
  static void strip_cr(std::string& s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
  }
  static bool is_blank(std::string_view s) {
    for (char c : s)
      if (!std::isspace(static_cast<unsigned char>(c))) return false;
    return true;
  }
  static std::string trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return std::string(s);
  }

  std::istream& in_;
  std::string line_;
  bool have_header_ = false;
  std::size_t line_no_ = 0;
};

inline std::vector<FastaRecord> read_fasta(std::istream& in) {
  FastaReader reader(in);
  std::vector<FastaRecord> out;
  FastaRecord rec;
  while (reader.next(rec)) out.push_back(rec);
  return out;
}

inline void write_fasta(std::ostream& out, std::string_view name, std::string_view seq, std::size_t width = 70) {
  out << '>' << name << '\n';
  for (std::size_t i = 0; i < seq.size(); i += width) out << seq.substr(i, width) << '\n';
}

}  // namespace bidir
