#include "vamci/core/catalog.hpp"

namespace vamci {

const std::vector<AnchorEntry>& default_anchor_catalog() {
  using C = Category;
  static const std::vector<AnchorEntry> catalog = {
      {"What is the weather outside?", "Check weather", C::information},
      {"What time is it?", "Check time", C::information},
      {"What is today's date?", "Check date", C::information},
      {"What is in the news today?", "Hear the news", C::information},
      {"How many ounces are in a cup?", "Convert units", C::information},
      {"When does the pharmacy close?", "Business hours", C::information},
      {"Play classical music.", "Play music", C::entertainment},
      {"Tell me a joke.", "Hear a joke", C::entertainment},
      {"Play the radio station NPR.", "Play radio", C::entertainment},
      {"Read my audiobook.", "Play audiobook", C::entertainment},
      {"Play a game of trivia.", "Play a game", C::entertainment},
      {"Turn up the volume.", "Volume up", C::entertainment},
      {"Remind me to start the laundry tomorrow at 2 PM.", "Add reminder, Laundry", C::productivity},
      {"Set a timer for 10 minutes.", "Set timer", C::productivity},
      {"Wake me up at 7 AM.", "Set alarm", C::productivity},
      {"What is on my calendar today?", "Check calendar", C::productivity},
      {"Add a doctor's appointment on Friday at 10 AM.", "Add calendar event", C::productivity},
      {"Remind me to take my medicine at 8 PM.", "Medication reminder", C::productivity},
      {"Add oranges and grapes to my shopping list.", "Add shopping list, Fruits", C::shopping},
      {"What is on my shopping list?", "Check shopping list", C::shopping},
      {"Reorder paper towels.", "Reorder item", C::shopping},
      {"Where is my package?", "Track order", C::shopping},
      {"Call (603)660-2203.", "Make a phone call", C::communication},
      {"Send a message to my daughter.", "Send message", C::communication},
      {"Call my son.", "Call contact", C::communication},
      {"Drop in on the kitchen.", "Drop in", C::communication},
      {"Turn on the bedroom light.", "Turn on light", C::smart_home},
      {"Turn off the living room light.", "Turn off light", C::smart_home},
      {"Set the thermostat to 70 degrees.", "Adjust thermostat", C::smart_home},
      {"Lock the front door.", "Lock door", C::smart_home},
      {"Yes.", "Confirm", std::nullopt},
      {"No.", "Decline", std::nullopt},
      {"Pause.", "Pause", std::nullopt},
      {"Stop.", "Stop", std::nullopt},
  };
  return catalog;
}

}  // namespace vamci
