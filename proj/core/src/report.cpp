#include "dynforge/report.hpp"

#include "json.hpp"

namespace dynforge {

namespace {

using ordered = nlohmann::ordered_json;

ordered field_desc(FieldPtr F) {
  ordered j;
  j["p"] = F->p();
  j["s"] = F->s();
  return j;
}

ordered series_value(const PuiseuxSeries& x) {
  ordered j;
  j["ram"] = x.ram();
  j["field"] = field_desc(x.field());
  ordered terms = ordered::array();
  for (const auto& [val, c] : x.term_list())
    terms.push_back(ordered::array({val.str(), c.code()}));
  j["terms"] = std::move(terms);
  j["prec"] = x.prec().str();
  j["exact"] = x.is_exact();
  return j;
}

ordered factor_value(const DynatomicFactorReport& rep) {
  ordered j;
  j["m"] = rep.m;
  j["n"] = rep.n;
  j["H"] = rep.H.str();
  j["mult"] = rep.mult;
  j["ell"] = rep.ell;
  j["y_section"] = rep.y_section;
  j["repeat"] = rep.repeat;
  j["coeff_degs"] = rep.coeff_degs;
  j["H0_unit"] = rep.H0_unit;
  ordered fiber;
  fiber["done"] = rep.fiber_done;
  if (!rep.fiber_note.empty()) fiber["note"] = rep.fiber_note;
  ordered places = ordered::array();
  for (const auto& pl : rep.places) {
    ordered p;
    p["e"] = pl.e;
    p["f"] = pl.f;
    p["lead_exponent"] = pl.lead_exponent.str();
    places.push_back(std::move(p));
  }
  fiber["places"] = std::move(places);
  fiber["rd"] = rep.rd_Z;
  fiber["ri"] = rep.ri_Z;
  j["fiber"] = std::move(fiber);
  j["gonality_lb"] = rep.gonality_lb.str();
  ordered counts;
  for (const auto& [s, pc] : rep.counts) {
    ordered c;
    c["affine"] = pc.affine;
    c["at_infinity"] = pc.at_infinity;
    c["singular"] = pc.singular;
    counts[std::to_string(s)] = std::move(c);
  }
  j["counts"] = std::move(counts);
  return j;
}

}  // namespace

std::string json_quote(const std::string& s) {
  return ordered(s).dump();
}

std::string json_family(const RatFamily& fam) {
  ordered j;
  j["field"] = field_desc(fam.field());
  j["q"] = fam.field()->q();
  j["num"] = fam.a().str();
  j["den"] = fam.b().str();
  j["degree"] = fam.d();
  return j.dump();
}

std::string json_certificate(const CertReport& cert) {
  ordered j;
  j["overall"] = to_string(cert.overall);
  ordered items = ordered::array();
  for (const auto& it : cert.items) {
    ordered e;
    e["index"] = it.index;
    e["name"] = it.name;
    e["status"] = to_string(it.status);
    e["witness"] = it.witness;
    items.push_back(std::move(e));
  }
  j["checks"] = std::move(items);
  j["outer_radius"] =
      cert.outer_radius ? ordered(cert.outer_radius->str()) : ordered(nullptr);
  ordered radii = ordered::array();
  for (const auto& r : cert.branch_radii) radii.push_back(r.str());
  j["branch_radii"] = std::move(radii);
  j["rel_prec"] = cert.rel_prec_used;
  return j.dump();
}

std::string json_constants(const FamilyConstants& fc) {
  ordered j;
  j["ram_lcm"] = fc.ram_lcm;
  j["residue_lcm"] = fc.residue_lcm;
  j["height_bound"] = fc.height_bound;
  j["stabilized"] = fc.stabilized;
  return j.dump();
}

std::string json_series(const PuiseuxSeries& x) {
  return series_value(x).dump();
}

std::string json_points(const std::vector<LabeledPoint>& pts) {
  ordered arr = ordered::array();
  for (const auto& pt : pts) {
    ordered j;
    j["word"] = pt.word;
    j["point"] = series_value(pt.point);
    arr.push_back(std::move(j));
  }
  return arr.dump();
}

std::string json_factor(const DynatomicFactorReport& rep) {
  return factor_value(rep).dump();
}

std::string json_factor_table(const std::vector<DynatomicFactorReport>& reps) {
  ordered arr = ordered::array();
  for (const auto& rep : reps) arr.push_back(factor_value(rep));
  return arr.dump();
}

std::string json_envelope(
    const std::vector<std::pair<std::string, std::string>>& sections) {
  ordered j;
  j["schema"] = kSchemaVersion;
  for (const auto& [key, value] : sections) j[key] = ordered::parse(value);
  return j.dump();
}

}  // namespace dynforge
