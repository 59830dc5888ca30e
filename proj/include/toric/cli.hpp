#pragma once

// Command-line front end.  Every verb reads and writes the JSON fan format of
// io.hpp; exit codes are 0 (ok), 1 (a check failed), 2 (malformed input).

#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "toric/builders.hpp"
#include "toric/classifier.hpp"
#include "toric/io.hpp"
#include "toric/manifest.hpp"

namespace toric::cli {

enum Exit { ok = 0, check_failed = 1, malformed = 2 };

/// Input that parses but is not a valid complete simplicial fan.
inline void require_valid(const Fan& f) {
  auto rep = validate(f);
  if (rep.valid && rep.complete) return;
  if (rep.violations.empty()) throw ParseError("/max_cones", "fan is not complete");
  const auto& v = rep.violations.front();
  std::string where = !v.cones.empty() ? "/max_cones/" + std::to_string(v.cones.front())
                      : !v.rays.empty() ? "/rays/" + std::to_string(v.rays.front())
                                        : "/";
  throw ParseError(where, v.kind + ": " + v.message);
}

inline Fan load_valid(const std::string& path) {
  Fan f = read_fan(path);
  require_valid(f);
  return f;
}

inline Json violations_json(const ValidationReport& rep) {
  Json a = Json::array();
  for (const auto& v : rep.violations)
    a.push_back({{"kind", v.kind}, {"cones", v.cones}, {"rays", v.rays}, {"message", v.message}});
  return a;
}

inline Json report_json(const Fan& f) {
  Json j;
  j["rank"] = f.rank();
  j["num_rays"] = f.num_rays();
  j["num_max_cones"] = f.max_cones().size();
  j["picard_number"] = picard_number(f);
  auto sing = singularity_report(f);
  j["gorenstein_index"] = to_json(sing.gorenstein_index);
  j["fano"] = is_fano(f);
  j["gorenstein_fano"] = sing.gorenstein_index == 1 && j["fano"].get<bool>();
  Json cones = Json::array();
  for (const auto& c : sing.minimal_singular)
    cones.push_back({{"cone", c.rays}, {"multiplicity", to_json(multiplicity(f, c))}});
  Json s;
  s["smooth"] = sing.smooth();
  s["terminal"] = sing.terminal();
  s["canonical"] = sing.canonical();
  s["isolated"] = sing.isolated;
  s["locus_dim"] = sing.sing_locus_dim;
  s["minimal_singular_cones"] = cones;
  std::map<std::string, int> counts;
  for (auto c : sing.cone_class) ++counts[to_string(c)];
  s["max_cone_classes"] = counts;
  j["singularities"] = s;
  auto tors = torsion_class_group(f);
  j["class_group_torsion"] = to_json(tors.invariant_factors);
  if (picard_number(f) == 1 && sing.gorenstein_index == 1 && is_fano(f)) j["fano_index"] = to_json(fano_index(f));
  return j;
}

inline Json mori_json(const Fan& f) {
  Json a = Json::array();
  const auto rays = mori_rays(f);
  const auto infos = wall_infos(f);
  for (std::size_t k = 0; k < rays.size(); ++k) {
    const auto& r = rays[k];
    auto d = classify_ray(f, r);
    Rational minus_k = 0;
    for (const auto& x : r.curve.pairing) minus_k += x;
    Json e;
    e["ray"] = k;
    e["curve"] = to_json(r.curve.pairing);
    e["anticanonical_degree"] = to_json(minus_k);
    e["kind"] = to_string(d.kind);
    e["locus_dim"] = d.locus_dim;
    e["image_dim"] = d.image_dim;
    e["exceptional_ray"] = d.exceptional_ray ? Json(*d.exceptional_ray) : Json(nullptr);
    e["relation"] = {{"rays", d.relation.rays}, {"coefficients", to_json(d.relation.coefficients)}};
    e["alpha"] = d.relation.alpha;
    e["beta"] = d.relation.beta();
    Json walls = Json::array();
    for (auto w : r.walls) walls.push_back(infos[w].wall.cone.rays);
    e["walls"] = walls;
    e["extremality"] = "exact LP: not a non-negative combination of the other wall classes";
    a.push_back(e);
  }
  return a;
}

/// "2*ray:0 + ray:3 - 1*ray:1" -> coefficient vector.
inline Divisor parse_divisor(const std::string& text, std::size_t num_rays) {
  Divisor d(num_rays, Integer(0));
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  auto bad = [&](const std::string& why) { return ParseError("--divisor", why + " in \"" + text + "\""); };
  std::size_t pos = 0;
  if (s.empty()) throw bad("empty divisor");
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') sign = s[pos++] == '-' ? -1 : 1;
    std::size_t end = s.find_first_of("+-", pos);
    std::string term = s.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    pos = end == std::string::npos ? s.size() : end;
    Integer coeff = 1;
    auto star = term.find('*');
    if (star != std::string::npos) {
      std::string c = term.substr(0, star);
      if (c.empty() || c.find_first_not_of("0123456789") != std::string::npos) throw bad("bad coefficient");
      coeff = Integer(c);
      term = term.substr(star + 1);
    }
    if (term.rfind("ray:", 0) != 0) throw bad("expected ray:i");
    std::string idx = term.substr(4);
    if (idx.empty() || idx.find_first_not_of("0123456789") != std::string::npos) throw bad("bad ray index");
    std::size_t i = std::stoul(idx);
    if (i >= num_rays) throw bad("ray index out of range");
    d[i] += sign * coeff;
  }
  return d;
}

inline std::vector<std::size_t> parse_indices(const std::string& text, const std::string& where) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError(where, "expected comma-separated indices, got \"" + text + "\"");
    out.push_back(std::stoul(item));
  }
  if (out.empty()) throw ParseError(where, "empty list");
  return out;
}

inline WeightVector parse_weights(const std::string& text) {
  std::vector<Integer> w;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos || Integer(item) == 0)
      throw ParseError("weights", "expected positive integers, got \"" + text + "\"");
    w.emplace_back(item);
  }
  if (w.size() < 2) throw ParseError("weights", "need at least two weights");
  return WeightVector(std::move(w));
}

inline Json manifest_json(const std::vector<ManifestEntry>& m) {
  Json a = Json::array();
  for (const auto& e : m)
    a.push_back({{"suite", e.suite}, {"check", e.check}, {"status", e.pass ? "pass" : "fail"}, {"witness", e.witness}});
  return a;
}

/// Emits a fan (canonical order) to `path`, or to `out` when path is empty or "-".
inline void emit_fan(const Fan& f, const std::string& path, std::ostream& out) {
  Json j = to_json(canonical_form(f));
  if (path.empty() || path == "-")
    out << j.dump(2) << '\n';
  else
    write_json(j, path);
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact toolkit for simplicial complete toric varieties", "toric_cli"};
  app.require_subcommand(1);
  int code = ok;

  std::string in_path, out_path;
  auto* validate_cmd = app.add_subcommand("validate", "Check a fan; exit 1 if it is not a complete simplicial fan");
  validate_cmd->add_option("fan", in_path, "fan JSON, - for stdin")->required();
  bool exhaustive = false;
  validate_cmd->add_flag("--exhaustive", exhaustive, "pairwise intersection test on every pair of cones");

  auto* report_cmd = app.add_subcommand("report", "Singularities, Gorenstein index, Fano test, Picard number");
  report_cmd->add_option("fan", in_path)->required();

  auto* mori_cmd = app.add_subcommand("mori", "Extremal rays and their contractions");
  mori_cmd->add_option("fan", in_path)->required();

  std::size_t ray_index = 0;
  auto* contract_cmd = app.add_subcommand("contract", "Contract an extremal ray (index from `mori`)");
  contract_cmd->add_option("fan", in_path)->required();
  contract_cmd->add_option("--ray", ray_index)->required();
  contract_cmd->add_option("--out", out_path, "target fan file");

  auto* cover_cmd = app.add_subcommand("cover", "Quasi-etale universal cover");
  cover_cmd->add_option("fan", in_path)->required();
  cover_cmd->add_option("--out", out_path, "cover fan file");

  auto* build_cmd = app.add_subcommand("build", "Construct fans");
  build_cmd->require_subcommand(1);
  std::string weights, divisor, center;
  auto* wps_cmd = build_cmd->add_subcommand("wps", "Weighted projective space, e.g. 1,1,1,2,3");
  wps_cmd->add_option("weights", weights)->required();
  wps_cmd->add_option("--out", out_path);
  auto* bundle_cmd = build_cmd->add_subcommand("bundle", "P(O + O(D)) over a base fan");
  bundle_cmd->add_option("base", in_path)->required();
  bundle_cmd->add_option("--divisor", divisor, "e.g. \"2*ray:0\" or \"ray:1 + 3*ray:2\"")->required();
  bundle_cmd->add_option("--out", out_path);
  auto* blowup_cmd = build_cmd->add_subcommand("blowup", "Stellar subdivision at the primitive sum of the given rays");
  blowup_cmd->add_option("fan", in_path)->required();
  blowup_cmd->add_option("--center", center, "comma-separated ray indices of a cone")->required();
  blowup_cmd->add_option("--out", out_path);

  long dim = 0;
  auto* classify_cmd = app.add_subcommand("classify", "Admissible weight pairs (a,b) in dimension n");
  classify_cmd->add_option("--dim", dim)->required();

  bool paper = false;
  auto* verify_cmd = app.add_subcommand("verify", "Run the verification manifest");
  verify_cmd->add_flag("--paper", paper, "full manifest")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return malformed;
  }

  try {
    if (*validate_cmd) {
      Fan f = read_fan(in_path);
      auto rep = exhaustive ? validate_exhaustive(f) : validate(f);
      bool good = rep.valid && rep.complete;
      out << Json{{"valid", rep.valid}, {"complete", rep.complete}, {"violations", violations_json(rep)}}.dump(2)
          << '\n';
      code = good ? ok : check_failed;
    } else if (*report_cmd) {
      out << report_json(load_valid(in_path)).dump(2) << '\n';
    } else if (*mori_cmd) {
      out << mori_json(load_valid(in_path)).dump(2) << '\n';
    } else if (*contract_cmd) {
      Fan f = load_valid(in_path);
      auto rays = mori_rays(f);
      if (ray_index >= rays.size())
        throw ParseError("--ray", "index " + std::to_string(ray_index) + " but only " + std::to_string(rays.size()) +
                                      " extremal rays");
      auto d = classify_ray(f, rays[ray_index]);
      Json j{{"kind", to_string(d.kind)}};
      if (d.kind == ContractionKind::small) {
        err << "small contraction: the target is not simplicial and no fan is produced\n";
        out << j.dump(2) << '\n';
        return check_failed;
      }
      Fan target = f;
      if (d.kind == ContractionKind::divisorial) {
        auto dc = contract_divisorial(f, rays[ray_index]);
        target = dc.target;
        j["dropped_ray"] = dc.dropped_ray;
        j["image_cone"] = dc.image_cone.rays;
      } else {
        auto fc = contract_fiber_type(f, rays[ray_index].curve);
        target = fc.base;
        j["projection"] = to_json(fc.projection);
        if (fc.base.rank() + 1 == f.rank()) {
          auto bc = check_p1_bundle(f, fc);
          j["p1_bundle"] = bc.is_bundle;
          j["non_primitive_images"] = bc.non_primitive;
        }
      }
      if (out_path.empty() || out_path == "-") {
        j["target"] = to_json(canonical_form(target));
        out << j.dump(2) << '\n';
      } else {
        emit_fan(target, out_path, out);
        out << j.dump(2) << '\n';
      }
    } else if (*cover_cmd) {
      auto c = quasi_etale_cover(load_valid(in_path));
      Json j{{"deck_group", to_json(c.deck_group.invariant_factors)},
             {"deck_order", to_json(c.deck_group.torsion_order())},
             {"basis_change", to_json(c.basis_change)}};
      if (out_path.empty() || out_path == "-") {
        j["cover"] = to_json(canonical_form(c.cover_fan));
        out << j.dump(2) << '\n';
      } else {
        emit_fan(c.cover_fan, out_path, out);
        out << j.dump(2) << '\n';
      }
    } else if (*wps_cmd) {
      emit_fan(wps_fan(parse_weights(weights)), out_path, out);
    } else if (*bundle_cmd) {
      Fan base = load_valid(in_path);
      emit_fan(projectivized_sum_fan(base, parse_divisor(divisor, base.num_rays())).fan, out_path, out);
    } else if (*blowup_cmd) {
      Fan f = load_valid(in_path);
      auto idx = parse_indices(center, "--center");
      LatticeVector v(f.rank(), Integer(0));
      for (auto i : idx) {
        if (i >= f.num_rays()) throw ParseError("--center", "ray index " + std::to_string(i) + " out of range");
        v = v + f.ray(i);
      }
      if (is_zero(v)) throw ParseError("--center", "rays sum to zero");
      emit_fan(stellar_subdivision(f, primitive_part(v).first), out_path, out);
    } else if (*classify_cmd) {
      if (dim < 3) throw ParseError("--dim", "dimension must be at least 3");
      out << pairs_to_string(admissible_weights(dim)) << '\n';
    } else if (*verify_cmd) {
      auto m = paper_manifest();
      out << manifest_json(m).dump(2) << '\n';
      for (const auto& e : m)
        if (!e.pass) code = check_failed;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return malformed;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return malformed;
  }
  return code;
}

}  // namespace toric::cli
