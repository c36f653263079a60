"""Order queries on outsourced lists with integrity and privacy."""
