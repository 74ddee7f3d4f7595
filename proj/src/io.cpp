#include "plderham/io.hpp"

#include "plderham/linalg.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace plderham {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

std::vector<int> parse_word(const std::string& body, int line_no) {
  std::vector<int> word;
  std::string cur;
  for (char ch : body) {
    if (ch == ',') {
      if (cur.empty()) throw ParseError(line_no, "empty degeneracy index");
      word.push_back(std::stoi(cur));
      cur.clear();
    } else if (isdigit(static_cast<unsigned char>(ch))) {
      cur.push_back(ch);
    } else {
      throw ParseError(line_no, "bad degeneracy word character");
    }
  }
  if (!cur.empty()) word.push_back(std::stoi(cur));
  return word;
}

// face token: `id` or `id[w1,w2,...]`
std::pair<int, std::vector<int>> parse_face_token(const std::string& tok, int line_no) {
  auto lb = tok.find('[');
  if (lb == std::string::npos) {
    try {
      return {std::stoi(tok), {}};
    } catch (...) {
      throw ParseError(line_no, "bad face token: " + tok);
    }
  }
  if (tok.back() != ']') throw ParseError(line_no, "unterminated degeneracy word");
  int id = 0;
  try {
    id = std::stoi(tok.substr(0, lb));
  } catch (...) {
    throw ParseError(line_no, "bad face token: " + tok);
  }
  return {id, parse_word(tok.substr(lb + 1, tok.size() - lb - 2), line_no)};
}

std::string face_token(const SimplexPtr& f) {
  std::string out = std::to_string(f.base.index);
  if (!f.word.empty()) {
    out += "[";
    for (size_t i = 0; i < f.word.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(f.word[i]);
    }
    out += "]";
  }
  return out;
}

struct PendingSpace {
  std::string name;
  SimplicialSet::Builder builder;
  std::vector<std::pair<int, int>> seen;  // (dim, id) in order, to check density
};

}  // namespace

Document read_document(std::istream& in, bool validate) {
  Document doc;
  std::string line;
  int line_no = 0;

  std::optional<PendingSpace> pending;
  // raw simplex records per space: dim -> id -> (faces, label)
  struct RawSpace {
    std::map<int, std::map<int, std::pair<std::vector<std::pair<int, std::vector<int>>>,
                                          std::string>>>
        records;
    int first_line = 0;
  };
  std::vector<std::pair<std::string, RawSpace>> raw_spaces;
  struct RawSubset {
    std::string space;
    std::vector<std::pair<int, int>> members;
    int first_line = 0;
  };
  std::map<std::string, RawSubset> raw_subsets;
  struct RawMap {
    std::string src, dst;
    std::map<int, std::map<int, std::pair<int, std::vector<int>>>> arrows;
    int first_line = 0;
  };
  std::map<std::string, RawMap> raw_maps;
  std::vector<std::string> map_order;

  std::string current_space;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto toks = tokenize(line);
    if (toks.empty()) continue;

    if (toks[0] == "space") {
      if (toks.size() != 2) throw ParseError(line_no, "space wants a name");
      current_space = toks[1];
      raw_spaces.emplace_back(current_space, RawSpace{{}, line_no});
      continue;
    }
    if (toks[0] == "subset") {
      if (toks.size() != 5) throw ParseError(line_no, "subset wants: space name dim id");
      RawSubset& rs = raw_subsets[toks[2]];
      if (rs.members.empty()) {
        rs.space = toks[1];
        rs.first_line = line_no;
      } else if (rs.space != toks[1]) {
        throw ParseError(line_no, "subset " + toks[2] + " changes its space");
      }
      try {
        rs.members.emplace_back(std::stoi(toks[3]), std::stoi(toks[4]));
      } catch (...) {
        throw ParseError(line_no, "bad subset member");
      }
      continue;
    }
    if (toks[0] == "map") {
      if (toks.size() != 4) throw ParseError(line_no, "map wants: name src dst");
      if (!raw_maps.count(toks[1])) map_order.push_back(toks[1]);
      raw_maps[toks[1]] = RawMap{toks[2], toks[3], {}, line_no};
      continue;
    }
    if (toks[0] == "arrow") {
      // arrow <map> <dim> <id> : <base-id> [word]
      if (toks.size() < 6 || toks[4] != ":")
        throw ParseError(line_no, "arrow wants: map dim id : base [w,...]");
      auto it = raw_maps.find(toks[1]);
      if (it == raw_maps.end()) throw ParseError(line_no, "arrow before its map");
      int dim = 0, id = 0, base = 0;
      try {
        dim = std::stoi(toks[2]);
        id = std::stoi(toks[3]);
        base = std::stoi(toks[5]);
      } catch (...) {
        throw ParseError(line_no, "bad arrow numbers");
      }
      std::vector<int> word;
      if (toks.size() >= 7) {
        const std::string& w = toks[6];
        if (w.size() < 2 || w.front() != '[' || w.back() != ']')
          throw ParseError(line_no, "bad arrow word");
        word = parse_word(w.substr(1, w.size() - 2), line_no);
      }
      it->second.arrows[dim][id] = {base, word};
      continue;
    }

    // simplex record: <dim> <id> : faces ... [@ label]
    if (current_space.empty())
      throw ParseError(line_no, "simplex record outside a space block");
    if (toks.size() < 3 || toks[2] != ":")
      throw ParseError(line_no, "simplex record wants: dim id : faces...");
    int dim = 0, id = 0;
    try {
      dim = std::stoi(toks[0]);
      id = std::stoi(toks[1]);
    } catch (...) {
      throw ParseError(line_no, "bad simplex header");
    }
    std::vector<std::pair<int, std::vector<int>>> faces;
    std::string label;
    for (size_t k = 3; k < toks.size(); ++k) {
      if (toks[k] == "@") {
        for (size_t j = k + 1; j < toks.size(); ++j) {
          if (!label.empty()) label += " ";
          label += toks[j];
        }
        break;
      }
      faces.push_back(parse_face_token(toks[k], line_no));
    }
    if (dim >= 1 && static_cast<int>(faces.size()) != dim + 1)
      throw ParseError(line_no, "expected " + std::to_string(dim + 1) + " faces");
    if (dim == 0 && !faces.empty()) throw ParseError(line_no, "vertex with faces");
    raw_spaces.back().second.records[dim][id] = {faces, label};
  }

  // Materialize spaces.
  for (auto& [name, rs] : raw_spaces) {
    SimplicialSet::Builder b;
    for (auto& [dim, by_id] : rs.records) {
      int expect = 0;
      for (auto& [id, rec] : by_id) {
        if (id != expect)
          throw ParseError(rs.first_line,
                           "space " + name + ": ids at dimension " +
                               std::to_string(dim) + " must be dense from 0");
        ++expect;
        std::vector<SimplexPtr> faces;
        for (auto& [target, word] : rec.first) {
          int base_dim = dim - 1 - static_cast<int>(word.size());
          faces.push_back({{base_dim, target}, word});
        }
        b.add_simplex(dim, std::move(faces), rec.second);
      }
    }
    SimplicialSetPtr space = b.build_unchecked();
    auto issues = space->validate();
    if (!issues.empty()) {
      if (validate) {
        std::ostringstream os;
        os << "space " << name << " is invalid:";
        for (const auto& s : issues) os << "\n  " << s;
        throw ParseError(rs.first_line, os.str());
      }
      doc.issues[name] = issues;
    }
    doc.space_order.push_back(name);
    doc.spaces[name] = space;
  }

  for (auto& [name, rs] : raw_subsets) {
    auto sp = doc.spaces.find(rs.space);
    if (sp == doc.spaces.end())
      throw ParseError(rs.first_line, "subset " + name + " names unknown space");
    SubSet s(sp->second);
    for (auto [dim, id] : rs.members) {
      if (!sp->second->valid_ref({dim, id}))
        throw ParseError(rs.first_line, "subset " + name + " has a bad member");
      s.insert({dim, id});
    }
    if (validate && !s.is_face_closed())
      throw ParseError(rs.first_line, "subset " + name + " is not face-closed");
    doc.subsets.emplace(name, std::make_pair(rs.space, std::move(s)));
  }

  for (const auto& name : map_order) {
    RawMap& rm = raw_maps.at(name);
    auto src = doc.spaces.find(rm.src);
    auto dst = doc.spaces.find(rm.dst);
    if (src == doc.spaces.end() || dst == doc.spaces.end())
      throw ParseError(rm.first_line, "map " + name + " names unknown spaces");
    std::vector<std::vector<SimplexPtr>> images(src->second->max_dim() + 1);
    for (int d = 0; d <= src->second->max_dim(); ++d) {
      for (int i = 0; i < src->second->count(d); ++i) {
        auto dit = rm.arrows.find(d);
        if (dit == rm.arrows.end() || !dit->second.count(i))
          throw ParseError(rm.first_line,
                           "map " + name + " is missing the image of (" +
                               std::to_string(d) + "," + std::to_string(i) + ")");
        auto& [base, word] = dit->second.at(i);
        int base_dim = d - static_cast<int>(word.size());
        images[d].push_back({{base_dim, base}, word});
      }
    }
    // SimplicialMap validates on construction.
    doc.maps.emplace(name, SimplicialMap(src->second, dst->second, images));
  }
  return doc;
}

Document read_document_file(const std::string& path, bool validate) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_document(in, validate);
}

void write_space(std::ostream& out, const std::string& name, const SimplicialSet& x) {
  out << "space " << name << "\n";
  for (int d = 0; d <= x.max_dim(); ++d) {
    for (int i = 0; i < x.count(d); ++i) {
      out << d << " " << i << " :";
      for (int k = 0; k <= d && d > 0; ++k) out << " " << face_token(x.face_entry({d, i}, k));
      const std::string& label = x.label({d, i});
      if (!label.empty()) out << " @ " << label;
      out << "\n";
    }
  }
}

void write_subset(std::ostream& out, const std::string& space_name,
                  const std::string& name, const SubSet& s) {
  for (SimplexRef m : s.members())
    out << "subset " << space_name << " " << name << " " << m.dim << " " << m.index
        << "\n";
}

void write_map(std::ostream& out, const std::string& name, const std::string& src,
               const std::string& dst, const SimplicialMap& f) {
  out << "map " << name << " " << src << " " << dst << "\n";
  for (int d = 0; d <= f.source()->max_dim(); ++d) {
    for (int i = 0; i < f.source()->count(d); ++i) {
      const SimplexPtr& img = f.image({d, i});
      out << "arrow " << name << " " << d << " " << i << " : " << img.base.index;
      if (!img.word.empty()) {
        out << " [";
        for (size_t k = 0; k < img.word.size(); ++k)
          out << (k ? "," : "") << img.word[k];
        out << "]";
      }
      out << "\n";
    }
  }
}

std::string polyform_to_record(const PolyForm& w) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [idx, poly] : w.terms()) {
    for (const auto& [e, c] : poly.terms()) {
      if (!first) os << " ; ";
      first = false;
      os << rational_str(c) << " [";
      for (size_t k = 0; k < e.size(); ++k) os << (k ? "," : "") << e[k];
      os << "] d(";
      for (size_t k = 0; k < idx.size(); ++k) os << (k ? "," : "") << (idx[k] + 1);
      os << ")";
    }
  }
  return first ? "0" : os.str();
}

PolyForm polyform_from_record(int p, int q, const std::string& record) {
  PolyForm w(p, q);
  std::string trimmed = record;
  if (trimmed == "0") return w;
  std::istringstream is(record);
  std::string term;
  // split on ';'
  std::vector<std::string> terms;
  {
    std::string acc;
    for (char ch : record) {
      if (ch == ';') {
        terms.push_back(acc);
        acc.clear();
      } else {
        acc.push_back(ch);
      }
    }
    terms.push_back(acc);
  }
  for (const std::string& t : terms) {
    std::istringstream ts(t);
    std::string rat_tok, exp_tok, idx_tok;
    ts >> rat_tok >> exp_tok >> idx_tok;
    if (rat_tok.empty() || exp_tok.size() < 2 || idx_tok.size() < 3)
      throw std::invalid_argument("malformed form term: " + t);
    Rational c = parse_rational(rat_tok);
    if (exp_tok.front() != '[' || exp_tok.back() != ']')
      throw std::invalid_argument("malformed exponents: " + exp_tok);
    Polynomial::Exponents e;
    {
      std::string body = exp_tok.substr(1, exp_tok.size() - 2);
      if (!body.empty()) {
        std::string cur;
        for (char ch : body + ",") {
          if (ch == ',') {
            e.push_back(std::stoi(cur));
            cur.clear();
          } else {
            cur.push_back(ch);
          }
        }
      }
    }
    if (static_cast<int>(e.size()) != p)
      throw std::invalid_argument("exponent arity mismatch");
    if (idx_tok.substr(0, 2) != "d(" || idx_tok.back() != ')')
      throw std::invalid_argument("malformed index set: " + idx_tok);
    std::vector<int> idx;
    {
      std::string body = idx_tok.substr(2, idx_tok.size() - 3);
      if (!body.empty()) {
        std::string cur;
        for (char ch : body + ",") {
          if (ch == ',') {
            idx.push_back(std::stoi(cur) - 1);
            cur.clear();
          } else {
            cur.push_back(ch);
          }
        }
      }
    }
    Polynomial f = w.coefficient(idx);
    f += Polynomial::monomial(p, e, c);
    w.set_term(idx, std::move(f));
  }
  return w;
}

void write_form(std::ostream& out, const std::string& name,
                const std::string& space_name, const GlobalForm& w) {
  out << "form " << name << " " << space_name << " " << w.degree() << "\n";
  for (const auto& [s, v] : w.values())
    out << "at " << s.dim << " " << s.index << " : " << polyform_to_record(v) << "\n";
}

GlobalForm read_form(std::istream& in, const SimplicialSetPtr& host,
                     std::string* name_out) {
  std::string line;
  int line_no = 0;
  std::optional<GlobalForm> form;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    if (toks[0] == "form") {
      if (toks.size() != 4) throw ParseError(line_no, "form wants: name space q");
      if (name_out) *name_out = toks[1];
      form.emplace(host, std::stoi(toks[3]));
      continue;
    }
    if (toks[0] == "at") {
      if (!form) throw ParseError(line_no, "at-record before form header");
      if (toks.size() < 5 || toks[3] != ":")
        throw ParseError(line_no, "at wants: dim id : terms");
      int dim = std::stoi(toks[1]);
      int id = std::stoi(toks[2]);
      std::string rest;
      for (size_t k = 4; k < toks.size(); ++k) {
        if (!rest.empty()) rest += " ";
        rest += toks[k];
      }
      form->set_value({dim, id}, polyform_from_record(dim, form->degree(), rest));
      continue;
    }
    throw ParseError(line_no, "unexpected record in form file");
  }
  if (!form) throw std::runtime_error("no form header found");
  return *form;
}

void write_matrix(std::ostream& out, const std::string& name, const SparseMatrix& m) {
  out << "matrix " << name << " " << m.rows() << " " << m.cols() << "\n";
  for (int i = 0; i < m.rows(); ++i) {
    out << "row " << i << " :";
    for (const auto& [c, v] : m.row(i)) out << " " << c << ":" << rational_str(v);
    out << "\n";
  }
}

}  // namespace plderham
