"""
Testing is based on pytest. https://docs.pytest.org
"""
