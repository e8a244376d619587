"""Allow ``python -m factn``"""
from factn.main import main

if __name__ == "__main__":
    main()
