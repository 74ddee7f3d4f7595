#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "plderham/global_form.hpp"
#include "plderham/linalg.hpp"
#include "plderham/simplicial.hpp"

namespace plderham {

// Line-oriented text format.
//
//   # comment
//   space <name>
//   <dim> <id> : <face> <face> ...  [@ <label>]
//   subset <space> <name> <dim> <id>
//   map <name> <src-space> <dst-space>
//   arrow <map> <dim> <id> : <base-id> [w1,w2,...]
//
// A face token is `<id>` or `<id>[w1,w2,...]`; the face target dimension is
// dim-1 minus the word length. Writers emit canonical form (records sorted,
// one subset member per line), so load/save round-trips are byte-identical.
struct Document {
  std::vector<std::string> space_order;
  std::map<std::string, SimplicialSetPtr> spaces;
  std::map<std::string, std::pair<std::string, SubSet>> subsets;  // -> (space, set)
  std::map<std::string, SimplicialMap> maps;
  // per space, validator findings (populated when loading without validation)
  std::map<std::string, std::vector<std::string>> issues;
};

struct ParseError : std::runtime_error {
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
  int line;
};

Document read_document(std::istream& in, bool validate = true);
Document read_document_file(const std::string& path, bool validate = true);

void write_space(std::ostream& out, const std::string& name, const SimplicialSet& x);
void write_subset(std::ostream& out, const std::string& space_name,
                  const std::string& name, const SubSet& s);
void write_map(std::ostream& out, const std::string& name, const std::string& src,
               const std::string& dst, const SimplicialMap& f);

// Canonical form serialization, exact round-trip:
//   form <name> <space> <q>
//   at <dim> <id> : <term> ; <term> ; ...
// with term = `<rational> [e1,...,ep] d(i1,...,iq)`.
void write_form(std::ostream& out, const std::string& name,
                const std::string& space_name, const GlobalForm& w);
GlobalForm read_form(std::istream& in, const SimplicialSetPtr& host,
                     std::string* name_out = nullptr);

std::string polyform_to_record(const PolyForm& w);
PolyForm polyform_from_record(int p, int q, const std::string& record);

// Exact matrix dump for cross-checking with computer-algebra systems:
//   matrix <name> <rows> <cols>
//   row <i> : <col>:<rational> ...
// row-major, zero entries omitted.
void write_matrix(std::ostream& out, const std::string& name, const SparseMatrix& m);

}  // namespace plderham
