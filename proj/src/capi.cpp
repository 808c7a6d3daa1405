int gbcsp_dummy_;
