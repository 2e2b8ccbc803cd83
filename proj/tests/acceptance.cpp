// Copyright 2026 The bkfourier Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance run: ten exact criteria, one verdict line each. Exits nonzero
// if any criterion fails.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "bkfourier/checks.hpp"

namespace {

using bkf::Record;

struct Verdict {
  bool pass = true;
  std::vector<std::string> notes;

  void fail(const std::string& why) {
    pass = false;
    notes.push_back(why);
  }
};

unsigned threads() { return std::max(1u, std::thread::hardware_concurrency()); }

std::vector<Record> run(std::vector<std::string> groups, std::vector<unsigned> qs,
                        std::vector<std::string> checks) {
  bkf::CheckConfig cfg;
  cfg.groups = std::move(groups);
  cfg.q_list = std::move(qs);
  cfg.checks = std::move(checks);
  cfg.threads = threads();
  return bkf::run_checks(cfg).records;
}

std::string where(const Record& r) {
  return r.group + " q=" + std::to_string(r.q) + " " + r.id;
}

// Requires exactly one record with this id per (group, q) and the given status.
void require(Verdict& v, const std::vector<Record>& recs, const std::string& group, unsigned q,
             const std::string& id, const std::string& status = "pass") {
  auto it = std::find_if(recs.begin(), recs.end(), [&](const Record& r) {
    return r.group == group && r.q == q && r.id == id;
  });
  if (it == recs.end()) {
    v.fail(group + " q=" + std::to_string(q) + " " + id + ": missing");
    return;
  }
  if (it->status != status) {
    std::string why = where(*it) + ": " + it->status + ", expected " + it->expected +
                      ", computed " + it->computed;
    for (const auto& [k, w] : it->witness) why += "; " + k + " = " + w;
    v.fail(why);
  }
}

const Record* find(const std::vector<Record>& recs, const std::string& group, unsigned q,
                   const std::string& id) {
  for (const Record& r : recs) {
    if (r.group == group && r.q == q && r.id == id) return &r;
  }
  return nullptr;
}

void require_scale(Verdict& v, const std::vector<Record>& recs, const std::string& group,
                   unsigned q, const std::string& id, const std::string& scale) {
  require(v, recs, group, q, id);
  const Record* r = find(recs, group, q, id);
  if (r && r->computed != scale + "*id") v.fail(where(*r) + ": scale " + r->computed);
}

Verdict sl2_main() {
  Verdict v;
  auto recs = run({"sl2"}, {3, 5}, {"involutivity"});
  require_scale(v, recs, "sl2", 3, "involutivity.stack", "243");
  require_scale(v, recs, "sl2", 5, "involutivity.stack", "3125");
  return v;
}

Verdict pgl2_main() {
  Verdict v;
  auto recs = run({"pgl2"}, {3, 5}, {"involutivity"});
  require_scale(v, recs, "pgl2", 3, "involutivity.stack", "243");
  require_scale(v, recs, "pgl2", 5, "involutivity.stack", "3125");
  for (unsigned q : {3u, 5u}) {
    require(v, recs, "pgl2", q, "involutivity.twisted-vanishing");
    require(v, recs, "pgl2", q, "involutivity.sector-assembly");
  }
  return v;
}

Verdict extension() {
  Verdict v;
  auto recs = run({"sl2", "pgl2"}, {3, 5}, {"extension"});
  for (const char* g : {"sl2", "pgl2"}) {
    for (unsigned q : {3u, 5u}) {
      require(v, recs, g, q, "extension.kernel");
      require(v, recs, g, q, "extension.operator");
    }
  }
  return v;
}

Verdict torus_stacks() {
  Verdict v;
  auto recs = run({"torus"}, {3, 5, 7}, {"involutivity"});
  for (unsigned q : {3u, 5u, 7u}) {
    const std::string cube = std::to_string(q * q * q);
    for (const char* g : {"sl2", "pgl2"}) {
      const std::string id = std::string("involutivity.torus-stack.") + g;
      require(v, recs, "torus", q, id);
      const Record* r = find(recs, "torus", q, id);
      if (r && r->computed != cube + "*id") v.fail(where(*r) + ": scale " + r->computed);
    }
  }
  return v;
}

Verdict quadratic_spaces() {
  Verdict v;
  auto recs = run({"quadform"}, {3, 5, 7}, {"quadform"});
  for (unsigned q : {3u, 5u, 7u}) {
    for (unsigned m : bkf::quadform_dims(q)) {
      for (const char* c : {".c-square", ".c-nonsquare"}) {
        const std::string tag = ".m" + std::to_string(m) + c;
        for (const char* id : {"quadform.involutivity", "quadform.tech",
                               "quadform.isotropic-count", "quadform.nondegenerate"}) {
          require(v, recs, "quadform", q, id + tag);
        }
      }
    }
    // negative check: passes when the hyperbolic plane is not involutive
    require(v, recs, "quadform", q, "quadform.hyperbolic-plane");
    const Record* r = find(recs, "quadform", q, "quadform.hyperbolic-plane");
    if (r && std::none_of(r->witness.begin(), r->witness.end(),
                          [](const auto& kv) { return kv.first == "delta"; })) {
      v.fail(where(*r) + ": no witness recorded");
    }
  }
  if (!find(recs, "quadform", 3, "quadform.involutivity.m2.c-square")) v.fail("(m, q) = (2, 3) not run");
  return v;
}

Verdict kernel_oracles() {
  Verdict v;
  auto recs = run({"torus"}, {3, 5, 7}, {"kernels"});
  for (unsigned q : {3u, 5u, 7u}) {
    for (const char* g : {"sl2", "pgl2", "gl2"}) {
      require(v, recs, "torus", q, std::string("kernels.torus-closed-form.") + g);
    }
  }
  return v;
}

// The second identity is checked in its literal form.
Verdict pushforwards() {
  Verdict v;
  auto recs = run({"pgl2", "gl2"}, {3, 5}, {"pushforward"});
  for (unsigned q : {3u, 5u}) {
    require(v, recs, "pgl2", q, "pushforward.f-sl2");
    require(v, recs, "pgl2", q, "pushforward.mu2-stack");
    require(v, recs, "pgl2", q, "pushforward.mu2-quotient-kernel");
    require(v, recs, "gl2", q, "pushforward.pi-gl2");
  }
  return v;
}

Verdict gl2_negative() {
  Verdict v;
  auto recs = run({"gl2"}, {3, 5}, {"kernels", "involutivity"});
  for (unsigned q : {3u, 5u}) {
    require(v, recs, "gl2", q, "involutivity.gl2-torus-delta");
    require(v, recs, "gl2", q, "kernels.gl2-non-descent");
  }
  const Record* d3 = find(recs, "gl2", 3, "involutivity.gl2-torus-delta");
  const Record* d5 = find(recs, "gl2", 5, "involutivity.gl2-torus-delta");
  if (!d3 || d3->computed != "-12") v.fail("q=3: Delta is not -12");
  if (!d5 || d5->computed != "20") v.fail("q=5: Delta is not 20");
  return v;
}

Verdict char2() {
  Verdict v;
  auto recs = run({"gl2-char2"}, {2, 4}, {"kernels", "involutivity"});
  require_scale(v, recs, "gl2-char2", 2, "involutivity.stack", "32");
  require_scale(v, recs, "gl2-char2", 4, "involutivity.stack", "1024");
  for (unsigned q : {2u, 4u}) require(v, recs, "gl2-char2", q, "kernels.group-restriction");
  return v;
}

Verdict algebra() {
  Verdict v;
  auto recs = run({"torus"}, {3, 5, 7, 9}, {"gauss"});
  for (unsigned q : {3u, 5u, 7u, 9u}) {
    for (const char* id : {"gauss.square", "gauss.kappa-sum", "gauss.kappa-twist", "gauss.crucial"}) {
      require(v, recs, "torus", q, id);
    }
  }
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Verdict()> fn;
  };
  const std::vector<Criterion> criteria{
      {"SL2 stack transform squares to q^5 (q = 3, 5)", sl2_main},
      {"PGL2 stack transform squares to q^5, twisted vanishing, sector assembly (q = 3, 5)",
       pgl2_main},
      {"extension through the open embedding, SL2 and PGL2 (q = 3, 5)", extension},
      {"torus stacks square to q^3 with the minus twist, SL2 and PGL2 (q = 3, 5, 7)",
       torus_stacks},
      {"quadratic-space transform, closed-form sum, isotropic count, hyperbolic plane fails",
       quadratic_spaces},
      {"closed-form torus kernels equal their pushforwards (q = 3, 5, 7)", kernel_oracles},
      {"pushforwards f_!, -q^{-1} pi_!, and mu2 on stacks (q = 3, 5)", pushforwards},
      {"GL2 Delta = 4 alpha_o(-1) q and non-descent witness (q = 3, 5)", gl2_negative},
      {"characteristic 2 stack squares to q^5 and restricts to the table (q = 2, 4)", char2},
      {"Gauss sum, kappa and crucial identities (q = 3, 5, 7, 9)", algebra},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].fn();
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    const double s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (v.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].name
              << " (" << s << " s)\n";
    for (const auto& n : v.notes) std::cout << "        " << n << "\n";
    failed += !v.pass;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass\n";
  return failed == 0 ? 0 : 1;
}
