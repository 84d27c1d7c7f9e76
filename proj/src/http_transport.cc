/* Copyright 2026 The Nevo Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "nevo/corpus.h"

namespace nevo::corpus {
namespace {

class HttpsTransport : public HttpTransport {
 public:
  HttpsTransport(const std::string& host, const std::string& user_agent)
      : client_("https://" + host) {
    client_.set_default_headers({{"User-Agent", user_agent}});
    client_.set_connection_timeout(10);
    client_.set_read_timeout(30);
    client_.set_follow_location(true);
  }

  HttpResponse get(const std::string& target) override {
    std::lock_guard lock(mu_);
    auto result = client_.Get(target);
    if (!result) {
      throw std::runtime_error("transport failure: " + httplib::to_string(result.error()));
    }
    return {result->status, result->body};
  }

 private:
  std::mutex mu_;
  httplib::Client client_;
};

}  // namespace

std::unique_ptr<HttpTransport> make_https_transport(const std::string& host,
                                                    const std::string& user_agent) {
  return std::make_unique<HttpsTransport>(host, user_agent);
}

}  // namespace nevo::corpus
