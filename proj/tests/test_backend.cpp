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

#include <doctest.h>

#include <thread>

#include <httplib.h>

#include "qcp/backend.hpp"
#include "qcp/job_service.hpp"
#include "qcp/program_text.hpp"

using namespace qcp;

TEST_SUITE_BEGIN("backend");

namespace {

const char* kBellProgram =
    "H 0\nCNOT 0 1\nMEASURE 0 -> 0\nMEASURE 1 -> 1\n";

JobRequest bell_request(std::uint64_t seed, int shots = 200) {
    JobRequest request;
    request.program = kBellProgram;
    request.shots = shots;
    request.seed = seed;
    return request;
}

}  // namespace

TEST_CASE("local backend executes a deterministic program") {
    LocalBackend backend(DeviceSpec::agave8());
    JobRequest request;
    request.program = "X 0\nMEASURE 0 -> 0\n";
    request.shots = 100;
    request.seed = 1;
    ShotResult result = backend.execute(request);
    CHECK(result.shots() == 100);
    CHECK(result.frequency(1) == 1.0);
}

TEST_CASE("local backend validation errors") {
    LocalBackend backend(DeviceSpec::agave8());
    JobRequest request;
    request.shots = 10;
    request.seed = 1;

    request.program = "X 0\nMEASURE";
    CHECK_THROWS_AS(backend.execute(request), ParseError);

    request.program = "RX(%t) 0\nMEASURE 0 -> 0";
    CHECK_THROWS_WITH_AS(backend.execute(request),
                         doctest::Contains("unbound"), Error);

    request.program = "H %q0\nMEASURE %q0 -> 0";
    CHECK_THROWS_WITH_AS(backend.execute(request),
                         doctest::Contains("physical"), Error);

    request.program = "CZ 0 2\nMEASURE 0 -> 0";
    CHECK_THROWS_WITH_AS(backend.execute(request),
                         doctest::Contains("not on a device edge"), Error);

    request.program = "H 0\n";
    CHECK_THROWS_WITH_AS(backend.execute(request),
                         doctest::Contains("no measurements"), Error);

    request.program = "X 0\nMEASURE 0 -> 0";
    request.shots = 0;
    CHECK_THROWS_AS(backend.execute(request), Error);
}

TEST_CASE("request and result JSON round trips") {
    JobRequest request = bell_request(42, 17);
    request.noise = NoiseModel{0.01, 0.02, 0.03};
    JobRequest back = job_request_from_json(job_request_to_json(request));
    CHECK(back.program == request.program);
    CHECK(back.shots == request.shots);
    CHECK(back.seed == request.seed);
    CHECK(back.noise->p1 == 0.01);
    CHECK(back.noise->readout_flip == 0.03);

    LocalBackend backend(DeviceSpec::agave8());
    ShotResult result = backend.execute(bell_request(5));
    ShotResult round = shot_result_from_json(shot_result_to_json(result));
    CHECK(round == result);
}

TEST_CASE("job service round trip and equivalence with local") {
    JobService service(DeviceSpec::agave8());
    service.start("127.0.0.1", 0);
    RemoteBackend remote(service.address());
    LocalBackend local(DeviceSpec::agave8());

    SUBCASE("device endpoint") {
        const DeviceSpec& device = remote.device();
        CHECK(device.name == "agave8");
        CHECK(device.n_qubits == 8);
        CHECK(device.edges == DeviceSpec::agave8().edges);
    }

    SUBCASE("bit-identical results for the same request") {
        ShotResult via_remote = remote.execute(bell_request(1234));
        ShotResult via_local = local.execute(bell_request(1234));
        CHECK(via_remote == via_local);
    }

    SUBCASE("noisy requests agree too") {
        JobRequest request = bell_request(99, 300);
        request.noise = NoiseModel{0.02, 0.03, 0.05};
        CHECK(remote.execute(request) == local.execute(request));
    }

    SUBCASE("submit then poll") {
        std::string id = remote.submit(bell_request(7));
        ShotResult result = remote.wait(id);
        CHECK(result.shots() == 200);
        JobRecord record = remote.lookup(id);
        CHECK(record.status == JobStatus::Done);
        CHECK(record.result.has_value());
        CHECK(*record.result == result);
    }

    SUBCASE("unknown id is a not-found error") {
        CHECK_THROWS_WITH_AS(remote.lookup("job-99999"),
                             doctest::Contains("unknown job id"), Error);
    }

    SUBCASE("malformed program fails before submission") {
        JobRequest request;
        request.program = "XYZZY 0";
        request.shots = 10;
        CHECK_THROWS_AS(remote.submit(request), ParseError);
    }

    SUBCASE("service refuses off-edge two-qubit gates") {
        JobRequest request;
        request.program = "CZ 0 2\nMEASURE 0 -> 0\n";
        request.shots = 10;
        // Parses fine, so the refusal comes from the service.
        CHECK_THROWS_WITH_AS(remote.execute(request),
                             doctest::Contains("rejected"), Error);
    }

    SUBCASE("concurrent submissions complete independently") {
        constexpr int kJobs = 8;
        std::vector<std::string> ids(kJobs);
        std::vector<std::thread> threads;
        for (int i = 0; i < kJobs; ++i)
            threads.emplace_back([&, i] {
                ids[i] = remote.submit(bell_request(1000 + i));
            });
        for (auto& t : threads) t.join();

        std::set<std::string> unique(ids.begin(), ids.end());
        CHECK(unique.size() == kJobs);
        for (int i = 0; i < kJobs; ++i) {
            ShotResult remote_result = remote.wait(ids[i]);
            ShotResult local_result = local.execute(bell_request(1000 + i));
            CHECK(remote_result == local_result);
        }
    }

    service.stop();
}

TEST_CASE("service answers malformed HTTP bodies with 400") {
    JobService service(DeviceSpec::agave8());
    service.start("127.0.0.1", 0);
    httplib::Client raw("127.0.0.1", service.port());

    auto not_json = raw.Post("/jobs", "this is not json", "text/plain");
    REQUIRE(not_json);
    CHECK(not_json->status == 400);

    auto missing_fields = raw.Post("/jobs", "{\"shots\": 5}",
                                   "application/json");
    REQUIRE(missing_fields);
    CHECK(missing_fields->status == 400);

    auto bad_noise = raw.Post(
        "/jobs",
        "{\"program\": \"X 0\\nMEASURE 0 -> 0\", \"shots\": 5,"
        " \"noise\": {\"p1\": 2.0, \"p2\": 0, \"readout_flip\": 0}}",
        "application/json");
    REQUIRE(bad_noise);
    CHECK(bad_noise->status == 400);
    service.stop();
}

TEST_CASE("remote backend reports unreachable services") {
    RemoteBackend remote("127.0.0.1:1");  // nothing listens here
    CHECK_THROWS_WITH_AS(remote.execute(bell_request(1)),
                         doctest::Contains("unreachable"), Error);
}

TEST_SUITE_END();
