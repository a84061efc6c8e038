#include "caidgeo/report.hpp"

#include <cinttypes>
#include <cstdio>

namespace caidgeo {

namespace {

using nlohmann::ordered_json;

ordered_json vec_json(const Vec& v) {
  ordered_json a = ordered_json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

ordered_json capacity_block(const CapacitySolution& geo) {
  ordered_json b;
  b["capacity_nats"] = geo.capacity;
  b["duality_gap"] = geo.duality_gap;
  b["center"] = vec_json(geo.center);
  b["maximizer"] = vec_json(geo.maximizer);
  b["support"] = geo.support;
  b["saddle_margin"] = geo.saddle_margin;
  b["caid_exact"] = geo.caid_exact;
  ordered_json verts = ordered_json::array();
  for (const auto& v : geo.caid.vertices()) verts.push_back(vec_json(v));
  b["caid_vertices"] = verts;
  return b;
}

ordered_json theorem1_block(const Theorem1Constants& t1) {
  ordered_json b;
  b["beta"] = t1.beta;
  b["gamma"] = t1.gamma;
  b["delta"] = t1.delta;
  b["certification"] = {
      {"angle",
       {{"value", t1.angle_rec.value},
        {"method", t1.angle_rec.method},
        {"certified", t1.angle_rec.certified}}},
      {"l1_minimum",
       {{"value", t1.l1_rec.value},
        {"method", t1.l1_rec.method},
        {"certified", t1.l1_rec.certified}}}};
  return b;
}

ordered_json theorem2_block(const Theorem2Constants& t2) {
  ordered_json b;
  b["gamma1"] = t2.gamma1;
  b["a_coefficient"] = t2.a_value;
  b["a_finite"] = t2.a_finite;
  if (!t2.a_finite) b["a_note"] = "lower bound only; growing under truncation";
  if (t2.gamma2) b["gamma2"] = *t2.gamma2;
  if (t2.delta) b["delta"] = *t2.delta;
  ordered_json faces = ordered_json::array();
  for (const auto& f : t2.per_face) {
    ordered_json fj;
    fj["sig_outer"] = f.sig_outer;
    fj["sig_inner"] = f.sig_inner;
    fj["phi"] = f.phi;
    fj["delta_face"] = f.delta_face;
    fj["improved_branch"] = f.w_cone_zero;
    faces.push_back(fj);
  }
  b["per_face"] = faces;
  b["certification"] = {
      {"gamma1",
       {{"value", t2.gamma1_rec.value},
        {"method", t2.gamma1_rec.method},
        {"certified", t2.gamma1_rec.certified}}},
      {"gamma2",
       {{"value", t2.gamma2_rec.value},
        {"method", t2.gamma2_rec.method},
        {"certified", t2.gamma2_rec.certified}}}};
  return b;
}

ordered_json certificate_block(const Certificate& cert) {
  ordered_json b;
  b["theorem"] = cert.theorem;
  b["samples"] = cert.samples;
  b["violations"] = cert.violations;
  b["warnings"] = cert.warnings;
  b["worst_margin"] = cert.worst_margin;
  ordered_json c;
  for (const auto& [k, v] : cert.constants) c[k] = v;
  b["constants"] = c;
  return b;
}

ordered_json provenance_block(const Provenance& p, int iterations) {
  ordered_json b;
  b["schema_version"] = 1;
  b["seed"] = p.seed;
  b["tolerance"] = p.tol;
  b["samples_requested"] = p.samples;
  b["jobs"] = p.jobs;
  b["solver_iterations"] = iterations;
  return b;
}

std::string samples_csv(const std::vector<NeighborhoodSample>& samples,
                        const InfoFn& info, double capacity,
                        const std::function<double(double)>& bound_of_distance) {
  std::string out = "distance,info,bound,margin\n";
  for (const auto& s : samples) {
    double i = info(s.point);
    double bound = bound_of_distance(s.distance);
    out += fmt(s.distance) + "," + fmt(i) + "," + fmt(bound) + "," +
           fmt(bound - i) + "\n";
  }
  (void)capacity;
  return out;
}

std::string curve_csv(const DecayCurve& curve) {
  std::string out = "tau,distance,info,lower,upper\n";
  for (std::size_t i = 0; i < curve.tau.size(); ++i) {
    out += fmt(curve.tau[i]) + "," + fmt(curve.distance[i]) + "," +
           fmt(curve.info[i]) + "," + fmt(curve.lower[i]) + "," +
           (std::isfinite(curve.upper[i]) ? fmt(curve.upper[i]) : "") + "\n";
  }
  return out;
}

}  // namespace caidgeo
