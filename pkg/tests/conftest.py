pytest_plugins = [
    "tests.fixtures.ng_fixtures"
]
