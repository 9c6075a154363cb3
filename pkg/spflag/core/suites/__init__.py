# Verification suites
