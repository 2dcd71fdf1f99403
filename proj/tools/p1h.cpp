/*
   Copyright 2026 The p1h Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// p1h: command-line front end.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "p1h/io.hpp"

using namespace p1h;
using io::json;

namespace {

constexpr int kOk = 0;
constexpr int kNo = 1;
constexpr int kInput = 2;

struct Common {
  std::string field = "Q";
  bool json = false;
  bool unpointed = false;
  std::string output;
};

void add_common(CLI::App* cmd, Common& c, bool with_unpointed = false) {
  cmd->add_option("--field", c.field, "Q, F2, F3, F5 or Fp=<prime>")->capture_default_str();
  cmd->add_flag("--json", c.json, "JSON output");
  if (with_unpointed) cmd->add_flag("--unpointed", c.unpointed, "read inputs as unpointed maps");
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

void write_out(const std::string& path, const json& j) {
  if (path.empty()) {
    emit(j);
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << "\n";
  std::cout << "wrote " << path << " (" << j.at("steps").size() << " steps, kind " << j.at("kind").get<std::string>() << ")\n";
}

std::string key_text(const WittInvariant& w) {
  std::string s = "rank " + std::to_string(w.rank) + ", disc " + w.disc_label();
  if (w.field.is_rationals()) {
    s += ", signature (" + std::to_string(w.pos) + ", " + std::to_string(w.neg) + ")";
    std::string h;
    for (const auto& [p, v] : w.hasse)
      if (v < 0) h += (h.empty() ? "" : ",") + p.get_str();
    s += ", hasse -1 at {" + h + "}";
  }
  return s;
}

// Either a pointed reading of both inputs or an unpointed one.
struct Pair {
  std::optional<RatFun> f, g;
  std::optional<UnpointedRat> u, v;
  bool pointed() const { return f.has_value(); }
};

UnpointedRat as_unpointed(const std::string& s, Field fld) {
  io::Function fn = io::parse_function(s, fld);
  if (auto* r = std::get_if<RatFun>(&fn)) return UnpointedRat::from_pointed(*r);
  return std::get<UnpointedRat>(fn);
}

Pair read_pair(const std::string& a, const std::string& b, Field fld, bool unpointed) {
  Pair p;
  if (!unpointed) {
    try {
      RatFun f = io::parse_pointed(a, fld);
      p.g = io::parse_pointed(b, fld);
      p.f = f;
      return p;
    } catch (const io::ParseError&) {
      throw;
    } catch (const RejectedPoint&) {
      throw;
    } catch (const Error&) {
      // fall back to the unpointed reading
    }
  }
  p.g.reset();
  p.u = unpointed ? io::parse_unpointed(a, fld) : as_unpointed(a, fld);
  p.v = unpointed ? io::parse_unpointed(b, fld) : as_unpointed(b, fld);
  return p;
}

int cmd_classify(const std::string& text, const Common& c) {
  const Field fld = Field::parse(c.field);
  io::Function fn = c.unpointed ? io::Function(io::parse_unpointed(text, fld)) : io::parse_function(text, fld);
  if (auto* r = std::get_if<RatFun>(&fn)) {
    PointedInvariant inv = pointed_invariant(*r);
    if (c.json) {
      emit(io::to_json(inv));
    } else {
      std::cout << "pointed, degree " << inv.n << "\nresultant " << inv.res.str() << "\nbezout form " << key_text(inv.witt) << "\n";
    }
    return kOk;
  }
  UnpointedInvariant inv = unpointed_invariant(std::get<UnpointedRat>(fn));
  if (c.json) {
    emit(io::to_json(inv));
  } else {
    std::cout << "unpointed, degree " << inv.n << "\nresultant class " << inv.res_class.str() << "\nbezout form "
              << key_text(inv.witt) << "\n";
  }
  return kOk;
}

ConnectResult connect_pair(const Pair& p) { return p.pointed() ? connect(*p.f, *p.g) : unpointed_connect(*p.u, *p.v); }

int cmd_equiv(const std::string& a, const std::string& b, const Common& c) {
  const Field fld = Field::parse(c.field);
  Pair p = read_pair(a, b, fld, c.unpointed);
  const bool eq = p.pointed() ? pointed_equiv(*p.f, *p.g) : unpointed_equiv(*p.u, *p.v);
  std::string reason;
  if (!eq) reason = connect_pair(p).reason;
  if (c.json) {
    json j{{"equivalent", eq}, {"kind", p.pointed() ? "pointed" : "unpointed"}};
    if (!eq) j["reason"] = reason;
    emit(j);
  } else {
    std::cout << (eq ? "equivalent" : "not equivalent: " + reason) << "\n";
  }
  return eq ? kOk : kNo;
}

int report_failure(const ConnectResult& r, bool as_json) {
  const bool exhausted = r.status == SearchStatus::Exhausted;
  if (as_json)
    emit({{"status", exhausted ? "exhausted" : "not_equivalent"}, {"reason", r.reason}});
  else
    std::cerr << (exhausted ? "equivalent, but certificate search exhausted: " : "not equivalent: ") << r.reason << "\n";
  return kNo;
}

int cmd_certify(const std::string& a, const std::string& b, const Common& c) {
  const Field fld = Field::parse(c.field);
  Pair p = read_pair(a, b, fld, c.unpointed);
  ConnectResult r = connect_pair(p);
  if (r.status != SearchStatus::Found) return report_failure(r, c.json);
  const Verdict v = verify(r.cert);
  if (!v.ok) throw std::logic_error("generated certificate failed verification: " + v.diagnostic);
  write_out(c.output, io::to_json(r.cert));
  return kOk;
}

int cmd_verify(const std::string& path, const Common& c) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(std::string("malformed JSON: ") + e.what());
  }
  const Verdict v = verify(io::certificate_from_json(j));
  if (c.json)
    emit({{"valid", v.ok}, {"diagnostic", v.diagnostic}});
  else
    std::cout << (v.ok ? "valid" : "invalid: " + v.diagnostic) << "\n";
  return v.ok ? kOk : kNo;
}

int cmd_matrix(const std::string& text, const Common& c, bool hankel) {
  const Field fld = Field::parse(c.field);
  RatFun f = io::parse_pointed(text, fld);
  Matrix<Scalar> m = hankel ? hankel_of(f).matrix() : bezout_form(f);
  if (c.json)
    emit(io::to_json(m));
  else
    std::cout << io::format(m);
  return kOk;
}

int cmd_binary(const std::string& a, const std::string& b, const Common& c, bool comp) {
  const Field fld = Field::parse(c.field);
  RatFun f = io::parse_pointed(a, fld), g = io::parse_pointed(b, fld);
  RatFun r = comp ? compose(f, g) : oplus(f, g);
  if (c.json)
    emit({{"result", io::format(r)}, {"invariant", io::to_json(pointed_invariant(r))}});
  else
    std::cout << io::format(r) << "\n";
  return kOk;
}

int cmd_cfrac(const std::string& text, const Common& c) {
  const Field fld = Field::parse(c.field);
  CFExpansion terms = cf_expand(io::parse_pointed(text, fld));
  if (c.json) {
    json a = json::array();
    for (const auto& t : terms) a.push_back({{"P", to_string(t.P)}, {"b", t.b.str()}});
    emit(a);
  } else {
    for (const auto& t : terms) std::cout << "(" << to_string(t.P) << ")/(" << t.b.str() << ")\n";
  }
  return kOk;
}

int cmd_reduce_kt(const std::string& text, const Common& c) {
  const Field fld = Field::parse(c.field);
  HermiteReduction h = hermite_reduce(io::parse_kt_matrix(text, fld));
  if (c.json) {
    emit({{"transform", io::to_json(h.transform)}, {"normal", io::to_json(h.normal)}, {"layout", h.layout}});
  } else {
    std::cout << "transform:\n" << io::format(h.transform) << "normal form:\n" << io::format(h.normal);
  }
  return kOk;
}

int cmd_oracle(oracle::EnumSpec s, const std::string& target, const Common& c) {
  s.target = oracle::parse_target(target);
  oracle::validate(s);
  oracle::CrossCheck r = oracle::cross_check(s);
  if (c.json) {
    emit(io::to_json(s, r));
  } else {
    std::cout << "points " << r.raw.points << ", edges " << r.raw.edges << ", components " << r.raw.components.size()
              << ", fibers " << r.raw.fibers << ", bridges " << r.bridges.size() << "\n";
    for (const auto& comp : r.raw.components)
      std::cout << "  " << comp.size << "  " << oracle::point_text(s, comp.representative) << "  [" << comp.invariant << "]\n";
    std::cout << r.verdict << "\n";
  }
  return r.agreement ? kOk : kNo;
}

int cmd_pd_equiv(const std::string& a, const std::string& b, const Common& c) {
  const Field fld = Field::parse(c.field);
  const bool eq = pd_equiv(io::parse_pd(a, fld), io::parse_pd(b, fld));
  if (c.json)
    emit({{"equivalent", eq}});
  else
    std::cout << (eq ? "equivalent" : "not equivalent") << "\n";
  return eq ? kOk : kNo;
}

int cmd_pd_certify(const std::string& a, const Common& c) {
  const Field fld = Field::parse(c.field);
  Certificate cert = pd_cert(io::parse_pd(a, fld));
  if (!verify(cert).ok) throw std::logic_error("generated certificate failed verification");
  write_out(c.output, io::to_json(cert));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Naive homotopy classes of rational functions"};
  app.require_subcommand(1);
  Common c;
  std::string a, b;
  oracle::EnumSpec spec;
  std::string target = "ratfun";
  int result = kOk;
  std::function<int()> action;

  auto* classify = app.add_subcommand("classify", "invariants of a rational function");
  add_common(classify, c, true);
  classify->add_option("function", a)->required();
  classify->callback([&] { action = [&] { return cmd_classify(a, c); }; });

  auto* equiv = app.add_subcommand("equiv", "decide naive homotopy equivalence");
  add_common(equiv, c, true);
  equiv->add_option("f", a)->required();
  equiv->add_option("g", b)->required();
  equiv->callback([&] { action = [&] { return cmd_equiv(a, b, c); }; });

  auto* certify = app.add_subcommand("certify", "write a homotopy certificate");
  add_common(certify, c, true);
  certify->add_option("f", a)->required();
  certify->add_option("g", b)->required();
  certify->add_option("-o,--output", c.output, "certificate file (default: stdout)");
  certify->callback([&] { action = [&] { return cmd_certify(a, b, c); }; });

  auto* verify_cmd = app.add_subcommand("verify", "check a certificate file");
  add_common(verify_cmd, c);
  verify_cmd->add_option("file", a)->required();
  verify_cmd->callback([&] { action = [&] { return cmd_verify(a, c); }; });

  auto* bezout = app.add_subcommand("bezout", "Bezout form");
  add_common(bezout, c);
  bezout->add_option("function", a)->required();
  bezout->callback([&] { action = [&] { return cmd_matrix(a, c, false); }; });

  auto* hankel = app.add_subcommand("hankel", "Hankel matrix");
  add_common(hankel, c);
  hankel->add_option("function", a)->required();
  hankel->callback([&] { action = [&] { return cmd_matrix(a, c, true); }; });

  auto* oplus_cmd = app.add_subcommand("oplus", "monoid sum f + g");
  add_common(oplus_cmd, c);
  oplus_cmd->add_option("f", a)->required();
  oplus_cmd->add_option("g", b)->required();
  oplus_cmd->callback([&] { action = [&] { return cmd_binary(a, b, c, false); }; });

  auto* compose_cmd = app.add_subcommand("compose", "composition f o g");
  add_common(compose_cmd, c);
  compose_cmd->add_option("f", a)->required();
  compose_cmd->add_option("g", b)->required();
  compose_cmd->callback([&] { action = [&] { return cmd_binary(a, b, c, true); }; });

  auto* cfrac = app.add_subcommand("cfrac", "twisted continued fraction terms");
  add_common(cfrac, c);
  cfrac->add_option("function", a)->required();
  cfrac->callback([&] { action = [&] { return cmd_cfrac(a, c); }; });

  auto* reduce = app.add_subcommand("reduce-kt", "Hermite reduction of a symmetric matrix over k[T]");
  add_common(reduce, c);
  reduce->add_option("matrix", a, "rows separated by ';', entries by ','")->required();
  reduce->callback([&] { action = [&] { return cmd_reduce_kt(a, c); }; });

  auto* orc = app.add_subcommand("oracle", "exhaustive component check over F_q");
  add_common(orc, c);
  orc->add_option("--q", spec.q, "field size")->capture_default_str();
  orc->add_option("--n", spec.n, "degree")->capture_default_str();
  orc->add_option("--D", spec.D, "T-degree bound (default: n for ratfun, 1 otherwise)");
  orc->add_option("--target", target, "ratfun, symmat, pd or unpointed")->capture_default_str();
  orc->add_option("--d", spec.d, "number of B_i for pd")->capture_default_str();
  orc->add_option("--workers", spec.workers, "worker threads")->capture_default_str();
  orc->callback([&] { action = [&] { return cmd_oracle(spec, target, c); }; });

  auto* pdeq = app.add_subcommand("pd-equiv", "equivalence of maps to P^d, given as 'A; B1, ..., Bd'");
  add_common(pdeq, c);
  pdeq->add_option("p", a)->required();
  pdeq->add_option("q", b)->required();
  pdeq->callback([&] { action = [&] { return cmd_pd_equiv(a, b, c); }; });

  auto* pdc = app.add_subcommand("pd-certify", "certificate from 'A; B1, ..., Bd' to (X^n, 1, ..., 1)");
  add_common(pdc, c);
  pdc->add_option("p", a)->required();
  pdc->add_option("-o,--output", c.output, "certificate file (default: stdout)");
  pdc->callback([&] { action = [&] { return cmd_pd_certify(a, c); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }
  try {
    result = action();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return result;
}
