#pragma once

#define NSBOX_VERSION "1.0.0"
