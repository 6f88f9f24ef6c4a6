// invhecke: exact verification runs and table exports for the
// twisted-involution module, the trace-form picture, Kazhdan-Lusztig cells
// with the asymptotic ring, and equivariant K-theory of finite groups.
//
// Exit codes: 0 success, 1 verified-property violation, 2 configuration
// error, 3 I/O error.

#include "biregular.hpp"
#include "cells.hpp"
#include "coxeter.hpp"
#include "groups.hpp"
#include "invmodule.hpp"
#include "laurent.hpp"
#include "report.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kConfig = 2;
constexpr int kIo = 3;

struct Options {
  std::string type;
  std::string star;
  int length_bound = -1;
  std::size_t limit = 1000000;
  int threads = 1;
  std::string out;
  std::string format = "json";
};

cox::StarMap parse_star(const std::string& s) {
  cox::StarMap st;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t comma = std::min(s.find(',', pos), s.size());
    const std::string tok = s.substr(pos, comma - pos);
    std::size_t used = 0;
    int v = -1;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad star entry: '" + tok + "'");
    }
    if (used != tok.size() || v < 0)
      throw std::invalid_argument("bad star entry: '" + tok + "'");
    st.perm.push_back(v);
    pos = comma + 1;
  }
  return st;
}

cox::GroupTable make_table(const Options& o, bool allow_bound) {
  std::optional<cox::StarMap> star;
  if (!o.star.empty()) star = parse_star(o.star);
  const cox::CoxeterSystem sys = cox::CoxeterSystem::from_type(o.type, star);
  std::optional<int> bound;
  if (o.length_bound >= 0) {
    if (!allow_bound)
      throw std::invalid_argument(
          "this command needs the whole finite group; drop --length-bound");
    // Rows are cut at the requested length; the ball is twice as deep so
    // every product the tables need stays inside it.
    bound = 2 * o.length_bound;
  } else if (!sys.finite()) {
    throw std::invalid_argument(
        "infinite systems need --length-bound");
  }
  return cox::GroupTable::enumerate(sys, bound, o.limit);
}

int emit(const report::json& j, const Options& o) {
  const std::string text = report::to_text(j, o.format);
  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    f << text;
    f.flush();
    if (!f) {
      std::cerr << "cannot write " << o.out << "\n";
      return kIo;
    }
  }
  if (j.contains("ok") && j["ok"].is_boolean() && !j["ok"].get<bool>())
    return kViolation;
  return kOk;
}

void add_output_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--out", o.out, "Write the report to this file");
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "tsv"}));
}

void add_system_flags(CLI::App* cmd, Options& o, bool with_bound) {
  cmd->add_option("--type", o.type,
                  "Coxeter type, e.g. A2, B3, D4, G2, I2(7), A1~, A2xA2")
      ->required();
  cmd->add_option("--star", o.star,
                  "Diagram involution as a permutation, e.g. 0,1,3,2");
  if (with_bound)
    cmd->add_option("--length-bound", o.length_bound,
                    "Cover rows of length at most this bound");
  cmd->add_option("--limit", o.limit, "Cap on enumerated elements");
}

grp::FiniteGroup parse_atom(const std::string& name) {
  if (name == "1") return grp::FiniteGroup::trivial();
  if (name == "Q8") return grp::FiniteGroup::quaternion8();
  if (name.size() >= 2 && (name[0] == 'C' || name[0] == 'S' || name[0] == 'D')) {
    int n = 0;
    try {
      std::size_t used = 0;
      n = std::stoi(name.substr(1), &used);
      if (used + 1 != name.size()) n = 0;
    } catch (const std::exception&) {
      n = 0;
    }
    if (n >= 1) {
      if (name[0] == 'C') return grp::FiniteGroup::cyclic(n);
      if (name[0] == 'S') return grp::FiniteGroup::symmetric(n);
      return grp::FiniteGroup::dihedral(n);
    }
  }
  throw std::invalid_argument("unknown group: '" + name + "'");
}

grp::FiniteGroup parse_group(const std::string& spec) {
  std::vector<grp::FiniteGroup> factors;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    const std::size_t sep = std::min(spec.find('x', pos), spec.size());
    std::string tok = spec.substr(pos, sep - pos);
    int power = 1;
    if (const std::size_t caret = tok.find('^'); caret != std::string::npos) {
      try {
        power = std::stoi(tok.substr(caret + 1));
      } catch (const std::exception&) {
        throw std::invalid_argument("bad power in group: '" + tok + "'");
      }
      if (power < 1) throw std::invalid_argument("bad power in group: '" + tok + "'");
      tok = tok.substr(0, caret);
    }
    const grp::FiniteGroup atom = parse_atom(tok);
    for (int i = 0; i < power; ++i) factors.push_back(atom);
    pos = sep + 1;
  }
  grp::FiniteGroup g = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i)
    g = grp::FiniteGroup::direct_product(g, factors[i]);
  return g;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact checks and table exports around a Hecke-algebra module on "
      "twisted involutions"};
  app.require_subcommand(1);

  Options vo;
  CLI::App* verify = app.add_subcommand(
      "verify", "Run the verification suite for one system");
  add_system_flags(verify, vo, true);
  verify->add_option("--threads", vo.threads, "Worker-thread bound")
      ->check(CLI::Range(1, 256));
  add_output_flags(verify, vo);

  Options to;
  CLI::App* table = app.add_subcommand("table", "Export tables");
  table->require_subcommand(1);
  CLI::App* table_mu =
      table->add_subcommand("mu", "The L / tilde-L / lambda tables");
  add_system_flags(table_mu, to, true);
  add_output_flags(table_mu, to);

  Options bo;
  CLI::App* bireg_cmd = app.add_subcommand(
      "biregular", "The trace-form picture on a finite group");
  add_system_flags(bireg_cmd, bo, false);
  add_output_flags(bireg_cmd, bo);

  Options co;
  std::string emit_what = "cells";
  CLI::App* cells_cmd =
      app.add_subcommand("cells", "Kazhdan-Lusztig cells and the asymptotic ring");
  add_system_flags(cells_cmd, co, false);
  cells_cmd->add_option("--emit", emit_what, "Which tables to emit")
      ->check(CLI::IsMember({"kl", "cells", "jring", "jcm"}));
  add_output_flags(cells_cmd, co);

  Options ko;
  std::string group_spec;
  std::string check = "prop32";
  CLI::App* kth_cmd = app.add_subcommand(
      "group-ktheory", "Equivariant K-theory checks on a finite group");
  kth_cmd->add_option("--group", group_spec,
                      "Group name: 1, Cn, Sn (n<=6), Dn (order 2n), Q8, "
                      "products with x, powers with ^")
      ->required();
  kth_cmd->add_option("--check", check, "Which report to run")
      ->check(CLI::IsMember({"prop32", "chi", "fourier"}));
  add_output_flags(kth_cmd, ko);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  try {
    if (verify->parsed()) {
      const cox::GroupTable g = make_table(vo, true);
      return emit(report::verify_report(g, vo.length_bound, vo.threads), vo);
    }
    if (table->parsed() && table_mu->parsed()) {
      const cox::GroupTable g = make_table(to, true);
      return emit(report::mu_table_report(g, to.length_bound), to);
    }
    if (bireg_cmd->parsed()) {
      const cox::GroupTable g = make_table(bo, false);
      return emit(report::biregular_report(g), bo);
    }
    if (cells_cmd->parsed()) {
      const cox::GroupTable g = make_table(co, false);
      if (emit_what == "jcm" && !g.system().star().is_identity())
        throw std::invalid_argument(
            "the module ideal needs the identity diagram involution");
      return emit(report::cells_report(g, emit_what), co);
    }
    if (kth_cmd->parsed()) {
      return emit(report::group_ktheory_report(parse_group(group_spec), check),
                  ko);
    }
    return kConfig;
  } catch (const cox::InvalidMatrix& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kConfig;
  } catch (const cox::InvalidStar& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kConfig;
  } catch (const cox::InfiniteGroupFullEnumeration& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kConfig;
  } catch (const cox::LimitExceeded& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kConfig;
  } catch (const cox::BallExceeded& e) {
    std::cerr << "configuration error (ball too small): " << e.what() << "\n";
    return kConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "violation: " << e.what() << "\n";
    return kViolation;
  }
}
