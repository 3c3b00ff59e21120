#pragma once

#define EVENTUM_VERSION "0.1.0"
