// Copyright 2026 The qcp Authors
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

#include "qcp/job_service.hpp"

#include <condition_variable>
#include <deque>
#include <mutex>
#include <random>
#include <thread>
#include <unordered_map>

#include <httplib.h>

namespace qcp {

struct JobService::Impl {
    DeviceSpec device;
    std::optional<NoiseModel> default_noise;
    int n_workers;

    httplib::Server server;
    std::thread server_thread;
    std::string host;
    int bound_port = 0;

    std::mutex mutex;
    std::condition_variable queue_cv;
    std::deque<std::string> queue;  // pending job ids
    std::unordered_map<std::string, JobRecord> records;
    std::unordered_map<std::string, JobRequest> requests;
    std::uint64_t next_id = 1;
    bool stopping = false;
    std::vector<std::thread> workers;

    Impl(DeviceSpec dev, std::optional<NoiseModel> noise, int n)
        : device(std::move(dev)), default_noise(noise), n_workers(n) {
        device.validate();
        if (default_noise) default_noise->validate();
        install_routes();
    }

    void install_routes() {
        server.Post("/jobs", [this](const httplib::Request& req,
                                    httplib::Response& res) {
            handle_submit(req, res);
        });
        server.Get(R"(/jobs/([A-Za-z0-9\-]+))",
                   [this](const httplib::Request& req, httplib::Response& res) {
                       handle_lookup(req.matches[1], res);
                   });
        server.Get("/device", [this](const httplib::Request&,
                                     httplib::Response& res) {
            res.set_content(device_spec_to_json(device), "application/json");
        });
    }

    void handle_submit(const httplib::Request& req, httplib::Response& res) {
        JobRequest request;
        try {
            request = job_request_from_json(nlohmann::json::parse(req.body));
            validate_request(request, device);
        } catch (const std::exception& e) {
            res.status = 400;
            res.set_content(nlohmann::json{{"error", e.what()}}.dump(),
                            "application/json");
            return;
        }
        std::string id;
        {
            std::lock_guard<std::mutex> lock(mutex);
            id = "job-" + std::to_string(next_id++);
            records[id] = JobRecord{id, JobStatus::Queued, {}, {}};
            requests[id] = std::move(request);
            queue.push_back(id);
        }
        queue_cv.notify_one();
        res.set_content(nlohmann::json{{"id", id}}.dump(), "application/json");
    }

    void handle_lookup(const std::string& id, httplib::Response& res) {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = records.find(id);
        if (it == records.end()) {
            res.status = 404;
            res.set_content(
                nlohmann::json{{"error", "unknown job id '" + id + "'"}}.dump(),
                "application/json");
            return;
        }
        const JobRecord& record = it->second;
        nlohmann::json body;
        body["id"] = record.id;
        body["status"] = job_status_name(record.status);
        if (record.result) body["result"] = shot_result_to_json(*record.result);
        if (record.error) body["error"] = *record.error;
        res.set_content(body.dump(), "application/json");
    }

    void worker_loop() {
        while (true) {
            std::string id;
            JobRequest request;
            {
                std::unique_lock<std::mutex> lock(mutex);
                queue_cv.wait(lock, [this] { return stopping || !queue.empty(); });
                if (stopping && queue.empty()) return;
                id = queue.front();
                queue.pop_front();
                request = requests[id];
                records[id].status = JobStatus::Running;
            }
            JobRecord update{id, JobStatus::Done, {}, {}};
            try {
                Circuit circuit = validate_request(request, device);
                const std::optional<NoiseModel> noise =
                    request.noise ? request.noise : default_noise;
                const std::uint64_t seed =
                    request.seed ? *request.seed : std::random_device{}();
                update.result = sample_shots(circuit, request.shots, noise, seed);
            } catch (const std::exception& e) {
                update.status = JobStatus::Failed;
                update.error = e.what();
            }
            {
                std::lock_guard<std::mutex> lock(mutex);
                records[id] = std::move(update);
            }
        }
    }
};

JobService::JobService(DeviceSpec device, std::optional<NoiseModel> default_noise,
                       int workers)
    : impl_(std::make_unique<Impl>(std::move(device), default_noise,
                                   std::max(1, workers))) {}

JobService::~JobService() {
    stop();
}

void JobService::start(const std::string& host, int port) {
    impl_->host = host;
    if (port == 0) {
        impl_->bound_port = impl_->server.bind_to_any_port(host);
        if (impl_->bound_port <= 0) throw Error("cannot bind job service port");
    } else {
        if (!impl_->server.bind_to_port(host, port))
            throw Error("cannot bind " + host + ":" + std::to_string(port));
        impl_->bound_port = port;
    }
    for (int i = 0; i < impl_->n_workers; ++i)
        impl_->workers.emplace_back([this] { impl_->worker_loop(); });
    impl_->server_thread =
        std::thread([this] { impl_->server.listen_after_bind(); });
    impl_->server.wait_until_ready();
}

void JobService::stop() {
    if (!impl_) return;
    {
        std::lock_guard<std::mutex> lock(impl_->mutex);
        if (impl_->stopping) return;
        impl_->stopping = true;
    }
    impl_->queue_cv.notify_all();
    for (std::thread& w : impl_->workers)
        if (w.joinable()) w.join();
    impl_->server.stop();
    if (impl_->server_thread.joinable()) impl_->server_thread.join();
}

int JobService::port() const {
    return impl_->bound_port;
}

std::string JobService::address() const {
    return impl_->host + ":" + std::to_string(impl_->bound_port);
}

}  // namespace qcp
