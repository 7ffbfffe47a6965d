"""Toggle: an impartial Lights-Out variant on graphs."""
