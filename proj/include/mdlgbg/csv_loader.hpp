#ifndef MDLGBG_CSV_LOADER_HPP
#define MDLGBG_CSV_LOADER_HPP

#include <istream>
#include <string>
#include <vector>

#include "mdlgbg/types.hpp"

namespace mdlgbg {

// Which column holds class labels: a header name, a zero-based index, the
// last column ("last"), or none at all ("none").
struct LabelColumn {
    enum class Kind { Last, Index, Name, None };
    Kind kind = Kind::Last;
    std::size_t index = 0;
    std::string name;

    static LabelColumn parse(const std::string& text);
    std::string to_string() const;
};

// RFC 4180 record splitting: quoted fields, doubled quotes, CRLF or LF.
std::vector<std::vector<std::string>> read_csv_records(std::istream& in);

struct LoadedCsv {
    Dataset dataset;
    std::vector<std::string> header;  // empty when the file had none
    std::vector<std::string> class_names;  // label id -> original text
};

// Parses features as reals and maps label text to ids by first appearance.
// A first row with a non-numeric feature cell is treated as a header. Throws
// ParseError naming the row and column on ragged rows or bad cells.
LoadedCsv parse_csv(std::istream& in, const LabelColumn& label_column);
LoadedCsv load_csv(const std::string& path, const LabelColumn& label_column);

}  // namespace mdlgbg

#endif  // MDLGBG_CSV_LOADER_HPP
