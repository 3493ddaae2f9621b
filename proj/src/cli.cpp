#include "ptord/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ptord/oracles.hpp"

namespace ptord::cli {

namespace {

const std::vector<std::string> kRequiredColumns{"label", "a1", "a2", "a3", "a4", "a6", "ell", "p"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ',')) out.push_back(trim(cur));
  if (!s.empty() && s.back() == ',') out.emplace_back();
  return out;
}

Integer require_integer(const std::string& text, const std::string& what) {
  const auto v = parse_integer(text);
  if (!v) throw_input(what + ": '" + text + "' is not an integer");
  return *v;
}

unsigned require_defect(const std::string& text) {
  const Integer e = require_integer(text, "defect");
  if (e < 1 || e > 24) throw_input("defect must lie in 1..24, got " + e.get_str());
  return static_cast<unsigned>(e.get_ui());
}

bool require_bool(const std::string& text, const std::string& what) {
  if (text == "1" || text == "true" || text == "yes") return true;
  if (text == "0" || text == "false" || text == "no" || text.empty()) return false;
  throw_input(what + ": '" + text + "' is not a boolean");
}

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json optional_integer(const std::optional<Integer>& v) { return v ? integer_json(*v) : Json(nullptr); }

Json valuation_json(const Valuation& v) {
  return v.is_infinite() ? Json("inf") : Json(v.value());
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("PTORD_SEED")) {
    const auto v = parse_integer(env);
    if (!v || *v < 0 || *v > Integer("18446744073709551615")) {
      throw_input("PTORD_SEED must be a non-negative 64-bit integer");
    }
    return std::stoull(v->get_str());
  }
  return kDefaultSeed;
}

DegreeResult run_query(const QueryRecord& q, const EngineOptions& base) {
  EngineOptions opt = base;
  if (q.defect) opt.defect = q.defect;
  if (q.assume_minimal) opt.assume_minimal = *q.assume_minimal;
  return compute_degree(q.model, q.ell, q.p, opt);
}

// Runs f, converting library errors to an error document and exit status.
template <class F>
int guarded(std::ostream& err, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    err << "error [" << to_string(e.kind()) << "]: " << e.what() << "\n";
    return exit_code(e.kind());
  }
}

}  // namespace

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidInput: return 2;
    case ErrorKind::DefectTableMiss: return 3;
    case ErrorKind::ResourceLimit: return 4;
    case ErrorKind::InternalConsistency: return 1;
  }
  return 1;
}

Json integer_json(const Integer& x) {
  if (x.fits_slong_p()) return Json(static_cast<std::int64_t>(x.get_si()));
  return Json(x.get_str());
}

Json result_json(const DegreeResult& r, const std::string& label, bool explain,
                 const std::vector<std::string>* violations) {
  const Intermediates& im = r.intermediates;
  Json doc;
  doc["label"] = label.empty() ? Json(nullptr) : Json(label);
  doc["ell"] = integer_json(r.ell);
  doc["p"] = r.p;
  doc["d"] = integer_json(r.d);
  doc["branch"] = r.branch;
  Json red;
  red["kind"] = to_string(r.reduction.kind);
  red["e"] = optional_json(r.reduction.e);
  red["split"] = optional_json(r.reduction.split);
  red["defect_source"] = r.reduction.defect_source ? Json(to_string(*r.reduction.defect_source)) : Json(nullptr);
  red["kodaira"] = r.local.kodaira.str();
  red["valuations"] = Json::array({valuation_json(r.local.vc4), valuation_json(r.local.vc6),
                                   valuation_json(r.local.vD)});
  doc["reduction"] = red;
  Json in;
  in["a"] = optional_integer(im.a);
  in["n"] = optional_json(im.n);
  in["r"] = im.r;
  in["delta"] = im.delta;
  in["alpha"] = optional_json(im.alpha);
  in["beta"] = optional_json(im.beta);
  in["vj"] = valuation_json(im.vj);
  in["pth_power_j"] = optional_json(im.pth_power_j);
  in["b_divisible"] = optional_json(im.b_divisible);
  in["twist_u"] = optional_integer(im.twist_u);
  in["auxiliary_curve"] = optional_json(im.auxiliary_curve);
  doc["intermediates"] = in;
  if (violations) {
    doc["verify"] = Json{{"violations", *violations}};
  } else {
    doc["verify"] = nullptr;
  }
  if (explain) doc["explain"] = r.explain;
  return doc;
}

Json error_json(const std::string& label, ErrorKind kind, const std::string& message) {
  Json doc;
  doc["label"] = label.empty() ? Json(nullptr) : Json(label);
  doc["error"] = Json{{"kind", to_string(kind)}, {"message", message}};
  return doc;
}

CurveModel parse_a_invariants(const std::string& text) {
  const auto parts = split_commas(text);
  if (parts.size() != 5) throw_input("--a-invariants needs five comma-separated integers a1,a2,a3,a4,a6");
  CurveModel m{require_integer(parts[0], "a1"), require_integer(parts[1], "a2"), require_integer(parts[2], "a3"),
               require_integer(parts[3], "a4"), require_integer(parts[4], "a6")};
  standard_invariants(m);
  return m;
}

CurveModel parse_c_invariants(const std::string& text) {
  const auto parts = split_commas(text);
  if (parts.size() != 2) throw_input("--c-invariants needs two comma-separated integers c4,c6");
  const Integer c4 = require_integer(parts[0], "c4");
  const Integer c6 = require_integer(parts[1], "c6");
  if (c4 * c4 * c4 == c6 * c6) throw_input("c4^3 = c6^2: the curve is singular");
  return CurveModel::from_c_invariants(c4, c6);
}

std::vector<BatchRow> parse_batch(std::istream& in) {
  std::vector<BatchRow> rows;
  std::string line;
  int lineno = 0;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    header = split_commas(line);
  }
  if (header.empty()) return rows;
  if (header.size() < kRequiredColumns.size() ||
      !std::equal(kRequiredColumns.begin(), kRequiredColumns.end(), header.begin())) {
    throw_input("batch header must start with label,a1,a2,a3,a4,a6,ell,p");
  }
  int defect_col = -1;
  int minimal_col = -1;
  for (std::size_t i = kRequiredColumns.size(); i < header.size(); ++i) {
    int& slot = header[i] == "defect" ? defect_col : header[i] == "assume_minimal" ? minimal_col : defect_col;
    if ((header[i] != "defect" && header[i] != "assume_minimal") || slot != -1) {
      throw_input("unexpected batch column '" + header[i] + "'");
    }
    slot = static_cast<int>(i);
  }
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    BatchRow row;
    row.line = lineno;
    const auto cells = split_commas(line);
    row.label = cells.empty() ? std::string() : cells[0];
    try {
      if (cells.size() != header.size()) {
        throw_input("line " + std::to_string(lineno) + ": expected " + std::to_string(header.size()) +
                    " fields, found " + std::to_string(cells.size()));
      }
      QueryRecord q;
      q.label = cells[0];
      q.model = CurveModel{require_integer(cells[1], "a1"), require_integer(cells[2], "a2"),
                           require_integer(cells[3], "a3"), require_integer(cells[4], "a4"),
                           require_integer(cells[5], "a6")};
      q.ell = require_integer(cells[6], "ell");
      q.p = require_integer(cells[7], "p");
      if (defect_col >= 0 && !cells[defect_col].empty()) q.defect = require_defect(cells[defect_col]);
      if (minimal_col >= 0) q.assume_minimal = require_bool(cells[minimal_col], "assume_minimal");
      row.query = std::move(q);
    } catch (const Error& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::uint64_t row_seed(std::uint64_t seed, std::size_t index) noexcept {
  // splitmix64 finalizer
  std::uint64_t x = seed + 0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(index) + 1);
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::vector<std::string> run_batch(const std::vector<BatchRow>& rows, std::uint64_t seed, int jobs,
                                   const DefectTable* table, bool verify, int& worst_exit) {
  std::vector<std::string> lines(rows.size());
  std::vector<int> codes(rows.size(), 0);
  const auto count = static_cast<std::int64_t>(rows.size());
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
  for (std::int64_t i = 0; i < count; ++i) {
    const BatchRow& row = rows[static_cast<std::size_t>(i)];
    Json doc;
    if (!row.query) {
      doc = error_json(row.label, ErrorKind::InvalidInput, row.error);
      codes[i] = 2;
    } else {
      try {
        EngineOptions opt;
        opt.seed = row_seed(seed, static_cast<std::size_t>(i));
        opt.table = table;
        const DegreeResult r = run_query(*row.query, opt);
        std::vector<std::string> violations;
        if (verify) violations = check_consistency(r);
        doc = result_json(r, row.query->label, false, verify ? &violations : nullptr);
        if (!violations.empty()) codes[i] = 1;
      } catch (const Error& e) {
        doc = error_json(row.label, e.kind(), e.what());
        codes[i] = exit_code(e.kind());
      } catch (const std::exception& e) {
        doc = error_json(row.label, ErrorKind::InternalConsistency, e.what());
        codes[i] = 1;
      }
    }
    lines[i] = doc.dump();
  }
  worst_exit = 0;
  for (int c : codes) {
    if (c != 0) {
      worst_exit = c;
      break;
    }
  }
  return lines;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Degree of the p-torsion field of an elliptic curve over Q_l"};
  app.require_subcommand(1);

  struct Common {
    std::string a_inv, c_inv, ell, p, table_path, label;
    std::optional<unsigned> defect;
    std::optional<std::uint64_t> seed;
    bool json = false, explain = false, verify = false, assume_minimal = false;
  } c;

  auto add_curve_flags = [&](CLI::App* sub) {
    auto* a = sub->add_option("--a-invariants", c.a_inv, "a1,a2,a3,a4,a6 of an integral model");
    auto* ci = sub->add_option("--c-invariants", c.c_inv, "c4,c6; uses y^2 = x^3 - 27c4 x - 54c6");
    a->excludes(ci);
    sub->add_option("--defect", c.defect, "semistability defect override");
    sub->add_option("--seed", c.seed, "sampler seed (default: PTORD_SEED or built-in)");
    sub->add_option("--defect-table", c.table_path, "defect table file replacing the bundled one");
    sub->add_flag("--assume-minimal", c.assume_minimal, "reject models that are not minimal at l");
  };

  auto* compute = app.add_subcommand("compute", "degree for one curve");
  add_curve_flags(compute);
  compute->add_option("--ell", c.ell, "the prime l")->required();
  compute->add_option("--p", c.p, "the odd prime p != l")->required();
  compute->add_option("--label", c.label, "label echoed in the output");
  compute->add_flag("--json", c.json, "emit a JSON document");
  compute->add_flag("--explain", c.explain, "print the decision path");
  compute->add_flag("--verify", c.verify, "run the consistency checks");

  std::string input, output;
  int jobs = 1;
  auto* batch = app.add_subcommand("batch", "CSV rows in, JSON lines out");
  batch->add_option("--input", input, "CSV file with header label,a1,a2,a3,a4,a6,ell,p")->required();
  batch->add_option("--output", output, "JSON-lines output file (default stdout)");
  batch->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1, 1024));
  batch->add_option("--seed", c.seed, "batch seed (default: PTORD_SEED or built-in)");
  batch->add_option("--defect-table", c.table_path, "defect table file replacing the bundled one");
  batch->add_flag("--verify", c.verify, "run the consistency checks on every row");

  std::string d_text, e_text, different_text;
  auto* disc = app.add_subcommand("discriminant", "exponent of the discriminant ideal (l)^(dD/e)");
  add_curve_flags(disc);
  disc->add_option("--ell", c.ell, "the prime l")->required();
  disc->add_option("--p", c.p, "the prime p (curve form)");
  disc->add_option("--d", d_text, "degree d (numeric form)");
  disc->add_option("--e", e_text, "ramification index e");
  disc->add_option("--different", different_text, "different exponent D")->required();
  disc->add_flag("--json", c.json, "emit a JSON document");
  disc->add_flag("--explain", c.explain, "show d, e and D");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error [invalid-input]: " << e.what() << "\n";
    return 2;
  }

  return guarded(err, [&]() -> int {
    std::optional<DefectTable> table;
    if (!c.table_path.empty()) table = DefectTable::load_file(c.table_path);
    const DefectTable* table_ptr = table ? &*table : nullptr;
    const std::uint64_t seed = resolve_seed(c.seed);

    auto build_query = [&]() {
      QueryRecord q;
      q.label = c.label;
      if (!c.a_inv.empty()) {
        q.model = parse_a_invariants(c.a_inv);
      } else if (!c.c_inv.empty()) {
        q.model = parse_c_invariants(c.c_inv);
      } else {
        throw_input("one of --a-invariants or --c-invariants is required");
      }
      q.ell = require_integer(c.ell, "--ell");
      q.p = require_integer(c.p, "--p");
      q.defect = c.defect;
      q.assume_minimal = c.assume_minimal;
      return q;
    };
    EngineOptions base;
    base.seed = seed;
    base.table = table_ptr;

    if (*compute) {
      const QueryRecord q = build_query();
      const DegreeResult r = run_query(q, base);
      std::vector<std::string> violations;
      if (c.verify) violations = check_consistency(r);
      if (c.json) {
        out << result_json(r, q.label, c.explain, c.verify ? &violations : nullptr).dump(2) << "\n";
      } else {
        if (c.explain) {
          for (const auto& s : r.explain) out << s << "\n";
        }
        out << "d = " << r.d << "  (branch " << r.branch << ")\n";
        if (c.verify) {
          if (violations.empty()) {
            out << "verify: all checks passed\n";
          } else {
            for (const auto& v : violations) out << "verify: violated " << v << "\n";
          }
        }
      }
      return violations.empty() ? 0 : 1;
    }

    if (*batch) {
      std::ifstream file;
      std::istream* src = &std::cin;
      if (input != "-") {
        file.open(input);
        if (!file) throw_input("cannot open batch input '" + input + "'");
        src = &file;
      }
      const auto rows = parse_batch(*src);
      int worst = 0;
      const auto lines = run_batch(rows, seed, jobs, table_ptr, c.verify, worst);
      std::ofstream sink;
      std::ostream* dst = &out;
      if (!output.empty()) {
        sink.open(output);
        if (!sink) throw_input("cannot open batch output '" + output + "'");
        dst = &sink;
      }
      for (const auto& l : lines) *dst << l << "\n";
      return worst;
    }

    // discriminant
    const Integer D = require_integer(different_text, "--different");
    const Integer ell = require_integer(c.ell, "--ell");
    Integer d, e;
    const bool curve_form = !c.a_inv.empty() || !c.c_inv.empty();
    std::string source;
    if (curve_form) {
      if (!d_text.empty()) throw_input("--d cannot be combined with curve flags");
      if (c.p.empty()) throw_input("--p is required with curve flags");
      const DegreeResult r = run_query(build_query(), base);
      d = r.d;
      e = e_text.empty() ? Integer(static_cast<unsigned long>(ramification_index(r))) : require_integer(e_text, "--e");
      source = "branch " + r.branch;
    } else {
      if (d_text.empty() || e_text.empty()) throw_input("numeric form needs --d and --e");
      d = require_integer(d_text, "--d");
      e = require_integer(e_text, "--e");
    }
    const Integer exponent = discriminant_exponent(d, e, D);
    const std::string ideal = "(" + ell.get_str() + ")^" + exponent.get_str();
    if (c.json) {
      Json doc;
      doc["ell"] = integer_json(ell);
      doc["d"] = integer_json(d);
      doc["e"] = integer_json(e);
      doc["different"] = integer_json(D);
      doc["exponent"] = integer_json(exponent);
      doc["ideal"] = ideal;
      out << doc.dump(2) << "\n";
    } else {
      if (c.explain) {
        out << "d = " << d << ", e = " << e << ", D = " << D;
        if (!source.empty()) out << " (" << source << ")";
        out << "\n";
      }
      out << ideal << "\n";
    }
    return 0;
  });
}

}  // namespace ptord::cli
