#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "factorlat/errors.hpp"
#include "factorlat/json_io.hpp"

namespace fs = std::filesystem;
using namespace factorlat;

namespace {

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotFundamental:
    case ErrorKind::Unsupported:
      return 2;
    case ErrorKind::ExplicitUnavailable:
      return 3;
    case ErrorKind::TooLarge:
      return 4;
    case ErrorKind::Io:
      return 5;
    default:
      return 1;
  }
}

struct Config {
  bool json = false;
  std::string cache_dir;
  int cap = -1;  // unset

  int enum_cap() const { return cap > 0 ? cap : kDefaultEnumerationCap; }
  int dav_cap() const { return cap > 0 ? cap : kDefaultDavenportCap; }

  std::string resolved_cache_dir() const {
    if (!cache_dir.empty()) return cache_dir;
    if (const char* env = std::getenv("FACTORLAT_CACHE")) return env;
    return "";
  }
};

void atomic_write(const fs::path& path, const std::string& data) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  fs::path tmp = path;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::Io, "cannot open " + tmp.string() + " for writing");
    out << data;
    out.flush();
    if (!out) fail(ErrorKind::Io, "write failed for " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    fail(ErrorKind::Io, "cannot move temporary file to " + path.string());
  }
}

std::string classgroup_cache_text(const FormClassGroup& cg) {
  return classgroup_to_json(cg).dump(2) + "\n";
}

// Cache files are a pure performance artifact: loading one must reproduce the
// computation bit for bit, so a freshly computed group is written with the
// same serializer the loader reads.
FormClassGroup get_class_group(int64_t d, const Config& cfg) {
  Discriminant disc = check_fundamental(d);
  std::string dir = cfg.resolved_cache_dir();
  if (dir.empty()) return class_group(disc);
  fs::path path = fs::path(dir) / ("disc_" + std::to_string(-disc.value) + ".json");
  if (fs::exists(path)) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    Json j = Json::parse(buf.str());
    FormClassGroup cg = classgroup_from_json(j);
    if (cg.disc == disc) return cg;
  }
  FormClassGroup cg = class_group(disc);
  atomic_write(path, classgroup_cache_text(cg));
  return cg;
}

// "d1,d2,..." as the literal box Z/d1 x ... x Z/dk (coordinates in --seq
// refer to these factors, so no invariant-factor normalization here).
AbelianGroup parse_group_spec(const std::string& spec) {
  AbelianGroup g;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    int64_t v;
    try {
      v = std::stoll(item);
    } catch (...) {
      fail(ErrorKind::InvalidGroup, "bad group factor '" + item + "'");
    }
    if (v < 2) fail(ErrorKind::InvalidGroup, "factor " + std::to_string(v) + " < 2");
    g.factors.push_back(v);
  }
  if (g.factors.empty() && !spec.empty()) fail(ErrorKind::InvalidGroup, "empty group spec");
  return g;
}

// comma-separated id:classcoords:mult, coords dot-separated, e.g. "a:1.0:2"
ClassSequence parse_sequence_spec(const AbelianGroup& g, const std::string& spec) {
  std::vector<SequenceEntry> entries;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    size_t c1 = item.find(':');
    size_t c2 = item.rfind(':');
    if (c1 == std::string::npos || c2 == c1) fail(ErrorKind::InvalidInput, "bad sequence item '" + item + "'");
    std::string id = item.substr(0, c1);
    std::string coords = item.substr(c1 + 1, c2 - c1 - 1);
    int mult;
    try {
      mult = std::stoi(item.substr(c2 + 1));
    } catch (...) {
      fail(ErrorKind::InvalidInput, "bad multiplicity in '" + item + "'");
    }
    GroupElement e;
    std::stringstream cs(coords);
    std::string part;
    while (std::getline(cs, part, '.')) {
      try {
        e.c.push_back(std::stoll(part));
      } catch (...) {
        fail(ErrorKind::InvalidInput, "bad coordinate in '" + item + "'");
      }
    }
    entries.push_back(SequenceEntry{id, e, mult});
  }
  return make_sequence(g, std::move(entries));
}

void print_partition_line(std::ostream& os, const ClassSequence& seq, const BlockPartition& p, size_t idx) {
  os << "  " << (idx + 1) << ":";
  for (auto& b : p) {
    os << " [";
    auto ids = block_ids(seq, b);
    for (size_t i = 0; i < ids.size(); ++i) os << (i ? " " : "") << ids[i];
    os << "]";
  }
  os << "\n";
}

int cmd_classgroup(const Config& cfg, int64_t d) {
  FormClassGroup cg = get_class_group(d, cfg);
  if (cfg.json) {
    std::cout << classgroup_to_json(cg).dump() << "\n";
    return 0;
  }
  std::cout << "discriminant: " << cg.disc.value << "\n";
  std::cout << "radicand: " << cg.disc.radicand << "\n";
  std::cout << "class number: " << cg.reduced.size() << "\n";
  std::cout << "group: " << to_string(cg.group) << " " << to_json(cg.group).dump() << "\n";
  std::cout << "reduced forms:\n";
  for (auto& f : cg.reduced) std::cout << "  " << to_string(f) << "  class " << to_string(cg.class_of.at(f)) << "\n";
  std::cout << "ambiguous representatives:\n";
  for (auto& [cls, f] : cg.ambiguous) std::cout << "  class " << to_string(cls) << ": " << to_string(f) << "\n";
  return 0;
}

int cmd_forms(const Config& cfg, int64_t d) {
  FormClassGroup cg = get_class_group(d, cfg);
  if (cfg.json) {
    Json j = Json::array();
    for (auto& f : cg.reduced) j.push_back(to_json(f));
    std::cout << j.dump() << "\n";
    return 0;
  }
  for (auto& f : cg.reduced) std::cout << to_string(f) << "\n";
  return 0;
}

int cmd_eta(const Config& cfg, int64_t d, uint64_t n) {
  FormClassGroup cg = get_class_group(d, cfg);
  int64_t e = eta(n, cg, cfg.enum_cap());
  if (cfg.json) {
    Json j;
    j["n"] = n;
    j["disc"] = cg.disc.value;
    j["eta"] = e;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << e << "\n";
  }
  return 0;
}

void print_report(const Config& cfg, const FormClassGroup& cg, const FactorizationReport& rep) {
  if (cfg.json) {
    std::cout << report_to_json(rep).dump() << "\n";
    return;
  }
  std::cout << "n = " << rep.n << "\n";
  std::cout << "disc = " << rep.disc << "\n";
  std::cout << "eta = " << rep.eta << "\n";
  std::cout << "lengths = {";
  bool first = true;
  for (int l : rep.lengths) {
    std::cout << (first ? "" : ", ") << l;
    first = false;
  }
  std::cout << "}\n";
  std::cout << "partitions:\n";
  for (size_t i = 0; i < rep.partitions.size(); ++i)
    print_partition_line(std::cout, rep.sequence, rep.partitions[i], i);
  if (rep.mode == ReportMode::Explicit) {
    std::cout << "explicit factorizations:\n";
    for (size_t i = 0; i < rep.explicit_factors.size(); ++i) {
      std::cout << "  " << (i + 1) << ":";
      for (size_t k = 0; k < rep.explicit_factors[i].size(); ++k) {
        const KNumber& x = rep.explicit_factors[i][k];
        std::string s = to_string(cg.disc, x);
        bool needs_paren = s.find(' ') != std::string::npos && s.front() != '(';
        std::cout << (k ? " * " : " ") << (needs_paren ? "(" + s + ")" : s);
      }
      std::cout << "\n";
    }
  }
}

int cmd_factorize(const Config& cfg, int64_t d, uint64_t n, bool want_explicit) {
  FormClassGroup cg = get_class_group(d, cfg);
  try {
    FactorizationReport rep = enumerate_factorizations(n, cg, want_explicit, cfg.enum_cap());
    print_report(cfg, cg, rep);
    return 0;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ExplicitUnavailable) throw;
    FactorizationReport rep = enumerate_factorizations(n, cg, false, cfg.enum_cap());
    print_report(cfg, cg, rep);
    std::cerr << "explicit factorization unavailable: " << e.what() << "\n";
    return 3;
  }
}

int cmd_partitions(const Config& cfg, const std::string& group_spec, const std::string& seq_spec) {
  AbelianGroup g = parse_group_spec(group_spec);
  ClassSequence seq = parse_sequence_spec(g, seq_spec);
  auto partitions = enumerate_partitions(seq, cfg.enum_cap());
  if (cfg.json) {
    Json j;
    j["group"] = to_json(g);
    j["eta"] = partitions.size();
    Json parts = Json::array();
    for (auto& p : partitions) {
      Json jp = Json::array();
      for (auto& b : p) jp.push_back(Json(block_ids(seq, b)));
      parts.push_back(std::move(jp));
    }
    j["partitions"] = std::move(parts);
    std::cout << j.dump() << "\n";
    return 0;
  }
  std::cout << "eta = " << partitions.size() << "\n";
  for (size_t i = 0; i < partitions.size(); ++i) print_partition_line(std::cout, seq, partitions[i], i);
  return 0;
}

int cmd_davenport(const Config& cfg, const std::string& group_spec) {
  AbelianGroup g = parse_group_spec(group_spec);
  int dv = davenport(g, cfg.dav_cap());
  if (cfg.json) {
    Json j;
    j["group"] = to_json(g);
    j["davenport"] = dv;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << dv << "\n";
  }
  return 0;
}

int cmd_elasticity(const Config& cfg, const std::string& group_spec) {
  AbelianGroup g = parse_group_spec(group_spec);
  ElasticityResult r = elasticity(g, cfg.dav_cap());
  if (cfg.json) {
    Json j;
    j["group"] = to_json(g);
    j["elasticity"] = Json::array({r.num, r.den});
    j["witness"] = sequence_to_json(r.witness);
    std::cout << j.dump() << "\n";
  } else {
    std::cout << r.num;
    if (r.den != 1) std::cout << "/" << r.den;
    std::cout << "\n";
  }
  return 0;
}

int cmd_survey(const Config& cfg, int64_t d, uint32_t max_n, const std::string& out_path) {
  if (max_n > 1'000'000) fail(ErrorKind::TooLarge, "max_n exceeds 10^6");
  FormClassGroup cg = get_class_group(d, cfg);
  EtaSurveyor surveyor(cg, std::max<uint32_t>(max_n, 2), cfg.enum_cap());
  std::map<int64_t, uint64_t> histogram;
  uint64_t total = 0, unique = 0;
  for (uint32_t n = 2; n <= max_n; ++n) {
    int64_t e = surveyor.eta_of(n);
    histogram[e] += 1;
    ++total;
    if (e == 1) ++unique;
  }
  Json j;
  j["disc"] = cg.disc.value;
  j["max_n"] = max_n;
  Json h = Json::array();
  for (auto& [e, c] : histogram) h.push_back(Json::array({e, c}));
  j["histogram"] = std::move(h);
  j["count"] = total;
  j["eta1_count"] = unique;
  j["eta1_fraction"] = total ? static_cast<double>(unique) / static_cast<double>(total) : 0.0;
  atomic_write(out_path, j.dump(2) + "\n");
  if (!cfg.json) std::cout << "wrote " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"irreducible factorizations in imaginary quadratic orders"};
  app.require_subcommand(1);
  Config cfg;
  app.add_flag("--json", cfg.json, "JSON output");
  app.add_option("--cache-dir", cfg.cache_dir, "class-group cache directory (or FACTORLAT_CACHE)");
  app.add_option("--cap", cfg.cap, "enumeration size cap")->check(CLI::PositiveNumber);

  int64_t disc = 0;
  uint64_t n = 0;
  bool want_explicit = false;
  std::string group_spec, seq_spec, out_path;
  uint32_t max_n = 0;

  CLI::App* c_classgroup = app.add_subcommand("classgroup", "reduced forms and class group structure");
  c_classgroup->add_option("--disc", disc, "discriminant")->required();

  CLI::App* c_forms = app.add_subcommand("forms", "reduced forms");
  c_forms->add_option("--disc", disc, "discriminant")->required();

  CLI::App* c_eta = app.add_subcommand("eta", "number of irreducible factorizations");
  c_eta->add_option("--disc", disc, "discriminant")->required();
  c_eta->add_option("--n", n, "integer to factor")->required();

  CLI::App* c_factorize = app.add_subcommand("factorize", "enumerate irreducible factorizations");
  c_factorize->add_option("--disc", disc, "discriminant")->required();
  c_factorize->add_option("--n", n, "integer to factor")->required();
  c_factorize->add_flag("--explicit", want_explicit, "construct explicit elements");

  CLI::App* c_partitions = app.add_subcommand("partitions", "partitions of an abstract class sequence");
  c_partitions->add_option("--group", group_spec, "group spec d1,d2,...")->required();
  c_partitions->add_option("--seq", seq_spec, "sequence spec id:coords:mult,...");

  CLI::App* c_davenport = app.add_subcommand("davenport", "Davenport constant");
  c_davenport->add_option("--group", group_spec, "group spec d1,d2,...")->required();

  CLI::App* c_elasticity = app.add_subcommand("elasticity", "elasticity D(G)/2 with witness");
  c_elasticity->add_option("--group", group_spec, "group spec d1,d2,...")->required();

  CLI::App* c_survey = app.add_subcommand("survey", "eta histogram for n <= max-n");
  c_survey->add_option("--disc", disc, "discriminant")->required();
  c_survey->add_option("--max-n", max_n, "upper bound")->required();
  c_survey->add_option("--out", out_path, "output JSON path")->required();

  // let --json/--cache-dir/--cap appear after the subcommand too
  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_classgroup->parsed()) return cmd_classgroup(cfg, disc);
    if (c_forms->parsed()) return cmd_forms(cfg, disc);
    if (c_eta->parsed()) return cmd_eta(cfg, disc, n);
    if (c_factorize->parsed()) return cmd_factorize(cfg, disc, n, want_explicit);
    if (c_partitions->parsed()) return cmd_partitions(cfg, group_spec, seq_spec);
    if (c_davenport->parsed()) return cmd_davenport(cfg, group_spec);
    if (c_elasticity->parsed()) return cmd_elasticity(cfg, group_spec);
    if (c_survey->parsed()) return cmd_survey(cfg, disc, max_n, out_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
