#include "sfbench/payload.hpp"

#include "sfbench/error.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>

namespace sfbench {

using nlohmann::json;

namespace {

json params_to_json(const PacHyperParams& p) {
  return {{"C", p.C}, {"epochs", p.epochs}, {"shuffle_seed", p.shuffle_seed}};
}

PacHyperParams params_from_json(const json& j) {
  PacHyperParams p;
  p.C = j.at("C").get<double>();
  p.epochs = j.at("epochs").get<int>();
  p.shuffle_seed = j.value("shuffle_seed", std::uint64_t{0});
  return p;
}

json cv_to_json(const CvResult& r) {
  json per = json::array();
  for (const auto& c : r.per_candidate)
    per.push_back({{"params", params_to_json(c.params)},
                   {"fold_accuracies", c.fold_accuracies},
                   {"mean_accuracy", c.mean_accuracy}});
  return {{"best", params_to_json(r.best)},
          {"best_mean_accuracy", r.best_mean_accuracy},
          {"per_candidate", std::move(per)}};
}

CvResult cv_from_json(const json& j) {
  CvResult r;
  r.best = params_from_json(j.at("best"));
  r.best_mean_accuracy = j.at("best_mean_accuracy").get<double>();
  for (const auto& c : j.at("per_candidate"))
    r.per_candidate.push_back({params_from_json(c.at("params")),
                               c.at("fold_accuracies").get<std::vector<double>>(),
                               c.at("mean_accuracy").get<double>()});
  return r;
}

json parse_bytes(std::span<const std::uint8_t> bytes, const char* what) {
  try {
    return json::parse(bytes.begin(), bytes.end());
  } catch (const json::exception& e) {
    fail(ErrorKind::Parse, std::string(what) + ": " + e.what());
  }
}

Bytes to_bytes(const std::string& s) { return Bytes(s.begin(), s.end()); }

double thread_cpu_seconds() {
  timespec ts{};
  clock_gettime(CLOCK_THREAD_CPUTIME_ID, &ts);
  return static_cast<double>(ts.tv_sec) + static_cast<double>(ts.tv_nsec) * 1e-9;
}

Bytes error_response(int status, const std::string& message) {
  TrainingResponse r;
  r.status = status;
  r.error = message;
  return encode_response(r);
}

}  // namespace

std::vector<DocumentRecord> TrainingRequest::records() const {
  std::vector<DocumentRecord> out;
  out.reserve(docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) out.push_back({i, docs[i], labels[i]});
  return out;
}

TrainingRequest make_request(std::span<const DocumentRecord> shard,
                             const CvConfig& cv) {
  if (shard.empty()) fail(ErrorKind::InvalidArgument, "request: empty shard");
  TrainingRequest req;
  req.cv = cv;
  for (const auto& doc : shard) {
    req.docs.push_back(doc.text);
    req.labels.push_back(doc.label);
  }
  return req;
}

Bytes encode_request(const TrainingRequest& request) {
  json labels = json::array();
  for (auto l : request.labels) labels.push_back(label_name(l));
  json grid = json::array();
  for (const auto& p : request.cv.grid) grid.push_back(params_to_json(p));
  const json j = {{"docs", request.docs},
                  {"labels", std::move(labels)},
                  {"folds", request.cv.folds},
                  {"grid", {{"candidates", std::move(grid)}}},
                  {"seed", request.cv.seed}};
  return to_bytes(j.dump());
}

Bytes encode_request(std::span<const DocumentRecord> shard, const CvConfig& cv) {
  return encode_request(make_request(shard, cv));
}

TrainingRequest decode_request(std::span<const std::uint8_t> bytes) {
  const json j = parse_bytes(bytes, "request");
  try {
    TrainingRequest req;
    req.docs = j.at("docs").get<std::vector<std::string>>();
    for (const auto& l : j.at("labels")) req.labels.push_back(parse_label(l.get<std::string>()));
    if (req.docs.size() != req.labels.size())
      fail(ErrorKind::Parse, "request: docs and labels differ in length");
    req.cv.folds = j.at("folds").get<int>();
    for (const auto& p : j.at("grid").at("candidates"))
      req.cv.grid.push_back(params_from_json(p));
    req.cv.seed = j.at("seed").get<std::uint64_t>();
    return req;
  } catch (const json::exception& e) {
    fail(ErrorKind::Parse, std::string("request: ") + e.what());
  }
}

Bytes encode_response(const TrainingResponse& response) {
  json j;
  if (response.result) j = cv_to_json(*response.result);
  if (!response.error.empty()) j["error"] = response.error;
  j["status"] = response.status;
  j["compute_seconds"] = 0;
  auto text = j.dump();
  static constexpr std::string_view kPlaceholder = "\"compute_seconds\":0";
  const auto pos = text.find(kPlaceholder);
  char number[32];
  std::snprintf(number, sizeof number, "%.9e", response.compute_seconds);
  text.replace(pos + kPlaceholder.size() - 1, 1, number);
  return to_bytes(text);
}

TrainingResponse decode_response(std::span<const std::uint8_t> bytes) {
  const json j = parse_bytes(bytes, "response");
  try {
    TrainingResponse r;
    r.status = j.at("status").get<int>();
    r.compute_seconds = j.value("compute_seconds", 0.0);
    r.error = j.value("error", std::string{});
    if (j.contains("best")) r.result = cv_from_json(j);
    return r;
  } catch (const json::exception& e) {
    fail(ErrorKind::Parse, std::string("response: ") + e.what());
  }
}

Bytes handle_training_request(std::span<const std::uint8_t> request,
                              ComputeClock clock) {
  TrainingRequest req;
  try {
    req = decode_request(request);
  } catch (const std::exception& e) {
    return error_response(400, e.what());
  }
  try {
    const auto records = req.records();
    TrainingResponse resp;
    if (clock == ComputeClock::ThreadCpu) {
      const double start = thread_cpu_seconds();
      resp.result = kfold_cv(records, req.cv);
      resp.compute_seconds = thread_cpu_seconds() - start;
    } else {
      const auto start = std::chrono::steady_clock::now();
      resp.result = kfold_cv(records, req.cv);
      resp.compute_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    return encode_response(resp);
  } catch (const Error& e) {
    return error_response(e.kind() == ErrorKind::InvalidArgument ? 422 : 500, e.what());
  } catch (const std::exception& e) {
    return error_response(500, e.what());
  }
}

}  // namespace sfbench
