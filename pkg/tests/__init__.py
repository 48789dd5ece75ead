# Makes tests a package so the test-files can import tests.oracles
# when pytest is run from the project's root-folder.
