#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "proind/cache.hpp"
#include "proind/defsets.hpp"
#include "proind/errors.hpp"
#include "proind/fincat.hpp"
#include "proind/setval.hpp"
#include "proind/system_file.hpp"
#include "proind/verify.hpp"

namespace {

using namespace proind;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct Options {
  std::vector<std::string> structures;
  std::uint32_t arity = 1;
  std::uint64_t seed = 7;
  std::uint64_t cap_hom = 1'000'000;
  std::uint32_t max_arity = 0;  // 0: the command's default
  std::string format = "text";
  std::string cache_dir;
  std::string suite;
  std::string file;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct LoadedStructure {
  std::string name;
  std::string text;
  std::shared_ptr<const defsets::Model> model;
};

// A bundled name (S1, S2, S3) or a path to a structure file.
class Session {
 public:
  Session(const Options& opt, std::uint32_t default_max_arity)
      : caps_{opt.max_arity ? opt.max_arity : default_max_arity, opt.cap_hom},
        dir_(cache::resolve_dir(opt.cache_dir)) {
    std::vector<std::string> names = opt.structures;
    if (names.empty()) names = defsets::bundled_structure_names();
    for (const auto& n : names) load(n);
  }

  ~Session() {
    if (!dir_) return;
    for (const auto& s : loaded_) {
      try {
        cache::store_model(*s.model, s.text, *dir_);
      } catch (const Error& e) {
        std::cerr << "warning: cache not written: " << e.what() << "\n";
      }
    }
  }

  const std::vector<LoadedStructure>& structures() const { return loaded_; }

 private:
  void load(const std::string& name) {
    const auto bundled = defsets::bundled_structure_names();
    LoadedStructure s;
    if (std::find(bundled.begin(), bundled.end(), name) != bundled.end()) {
      s.name = name;
      s.text = defsets::bundled_structure_text(name);
    } else {
      s.name = std::filesystem::path(name).stem().string();
      s.text = read_file(name);
    }
    try {
      s.model = cache::load_model(s.text, caps_, dir_).model;
    } catch (const Error& e) {
      throw Error(e.kind(), name + ": " + e.message());
    }
    loaded_.push_back(std::move(s));
  }

  defsets::Caps caps_;
  std::optional<std::filesystem::path> dir_;
  std::vector<LoadedStructure> loaded_;
};

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

int cmd_enumerate(const Options& opt) {
  Session session(opt, std::max<std::uint32_t>(3, opt.arity));
  for (const auto& s : session.structures()) {
    const auto& m = *s.model;
    auto sets = m.enumerate(opt.arity);
    const auto& orbits = m.orbits(opt.arity);
    if (opt.format == "records") {
      std::cout << "structure=" << s.name << " arity=" << opt.arity << " sets=" << sets.size()
                << " orbits=" << orbits.size() << "\n";
    } else {
      std::cout << "structure " << s.name << " arity " << opt.arity << ": " << sets.size() << " sets, "
                << orbits.size() << " orbits\n";
    }
    for (const auto& set : sets) {
      std::string parts;
      const std::uint64_t mask = m.mask_of(set);
      for (std::size_t k = 0; k < orbits.size(); ++k) {
        if (mask >> k & 1) parts += (parts.empty() ? "" : " ") + std::to_string(k);
      }
      if (opt.format == "records") {
        std::cout << "set=" << m.set_id(set) << " structure=" << s.name << " size=" << set.size()
                  << " orbits=" << quoted(parts) << " members=" << quoted(m.format_set(set)) << "\n";
      } else {
        std::cout << m.set_id(set) << " size " << set.size() << " orbits [" << parts << "] "
                  << m.format_set(set) << "\n";
      }
    }
  }
  return kOk;
}

int cmd_points(const Options& opt) {
  if (opt.structures.size() > 1) throw UsageError("points takes a single --structure");
  Session session(opt, 3);
  const auto& s = session.structures().front();
  points::DefBase base(s.model);
  auto system = points::parse_system(base, read_file(opt.file));
  const std::size_t n = points::count_system_points(base, system);
  const char* kind = system.kind == points::SystemKind::kInd ? "ind" : "pro";
  if (opt.format == "records") {
    std::cout << "structure=" << s.name << " kind=" << kind << " points=" << n << "\n";
    std::istringstream lines(points::format_system_points(base, system));
    std::string line;
    std::getline(lines, line);  // the count header
    for (std::size_t k = 0; std::getline(lines, line); ++k) {
      std::cout << "point=" << k << " members=" << quoted(line) << "\n";
    }
  } else {
    std::cout << "structure " << s.name << " " << kind << "-system\n" << points::format_system_points(base, system);
  }
  return kOk;
}

int cmd_verify(const Options& opt) {
  const auto names = verify::suite_names();
  if (std::find(names.begin(), names.end(), opt.suite) == names.end()) {
    throw UsageError("unknown suite '" + opt.suite + "'");
  }
  if (opt.arity < 1) throw UsageError("--arity must be at least 1");
  Session session(opt, verify::kSuiteArityCap);
  verify::Config config;
  for (const auto& s : session.structures()) config.structures.push_back({s.name, s.model});
  config.arity_bound = opt.arity;
  config.seed = opt.seed;
  config.cap_hom = opt.cap_hom;
  auto report = verify::run_suite(opt.suite, config);
  std::cout << (opt.format == "records" ? verify::format_records(report) : verify::format_text(report));
  return report.passed() ? kOk : kFailed;
}

int cmd_aut(const Options& opt) {
  Session session(opt, 3);
  for (const auto& s : session.structures()) {
    const auto& m = *s.model;
    const auto& universe = m.structure().universe;
    if (opt.format == "records") {
      std::cout << "structure=" << s.name << " size=" << m.aut().size() << "\n";
    } else {
      std::cout << "structure " << s.name << ": " << m.aut().size() << " automorphisms\n";
    }
    for (const auto& g : m.aut().elements) {
      std::string line;
      for (std::size_t x = 0; x < g.size(); ++x) {
        line += (x ? " " : "") + universe[x] + "->" + universe[g[x]];
      }
      if (opt.format == "records") {
        std::cout << "automorphism structure=" << s.name << " map=" << quoted(line) << "\n";
      } else {
        std::cout << line << "\n";
      }
    }
  }
  return kOk;
}

int cmd_colimit(const Options& opt) {
  auto d = setval::parse_diagram(read_file(opt.file));
  if (d.variance != setval::Variance::kCovariant) throw UsageError("colimit needs a covariant diagram");
  auto check = fincat::is_filtering(*d.index);
  const auto* witness = std::get_if<fincat::FilteringWitness>(&check);
  const bool filtered = witness != nullptr;
  if (auto bad = setval::check_functorial(d); !bad.empty()) fail(ErrorKind::kNonFunctorial, bad.front());
  auto r = filtered ? setval::filtered_colimit(d, witness) : setval::colimit(setval::arrows_of(d));
  if (opt.format == "records") {
    std::cout << "colimit classes=" << r.size() << " filtered=" << (filtered ? "yes" : "no") << "\n";
  } else {
    std::cout << (filtered ? "filtered " : "") << "colimit\n";
  }
  std::cout << setval::format_colimit(d, r);
  return kOk;
}

int cmd_limit(const Options& opt) {
  auto d = setval::parse_diagram(read_file(opt.file));
  auto r = setval::limit(d);
  if (opt.format == "records") std::cout << "limit families=" << r.size() << "\n";
  std::cout << setval::format_limit(d, r);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"Ind- and pro-systems of definable sets over finite structures"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  auto add_structure = [&](CLI::App* cmd) {
    cmd->add_option("--structure", opt.structures, "Bundled name (S1, S2, S3) or structure file; repeatable")
        ->allow_extra_args(false);
    cmd->add_option("--cap-hom", opt.cap_hom, "Cap on candidate choices when listing Hom-sets")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-arity", opt.max_arity, "Arity cap of the models (default per command)")
        ->check(CLI::Range(1u, 12u));
    cmd->add_option("--cache-dir", opt.cache_dir, std::string("Cache directory (") + cache::kCacheDirEnv +
                                                      " overrides it)");
  };
  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"text", "records"}));
  };

  auto* enumerate = app.add_subcommand("enumerate", "List the definable sets of one arity");
  add_structure(enumerate);
  add_format(enumerate);
  enumerate->add_option("--arity", opt.arity, "Arity")->check(CLI::PositiveNumber);

  auto* points_cmd = app.add_subcommand("points", "Points of an ind- or pro-system file");
  add_structure(points_cmd);
  add_format(points_cmd);
  points_cmd->add_option("system", opt.file, "System file")->required();

  auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
  add_structure(verify_cmd);
  add_format(verify_cmd);
  verify_cmd->add_option("suite", opt.suite, "prop-points | prop-compact | prop-morphisms | cor-proind | lemma-iso | slice")
      ->required();
  verify_cmd->add_option("--arity", opt.arity, "Arity bound")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", opt.seed, "Seed for the sampled cases");

  auto* colimit = app.add_subcommand("colimit", "Colimit of a set-valued diagram file");
  add_format(colimit);
  colimit->add_option("diagram", opt.file, "Diagram file")->required();

  auto* limit = app.add_subcommand("limit", "Limit of a set-valued diagram file");
  add_format(limit);
  limit->add_option("diagram", opt.file, "Diagram file")->required();

  auto* aut = app.add_subcommand("aut", "Automorphism group of each structure");
  add_structure(aut);
  add_format(aut);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*enumerate) return cmd_enumerate(opt);
    if (*points_cmd) return cmd_points(opt);
    if (*verify_cmd) return cmd_verify(opt);
    if (*colimit) return cmd_colimit(opt);
    if (*limit) return cmd_limit(opt);
    if (*aut) return cmd_aut(opt);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
